#pragma once

#include <utility>
#include <vector>

namespace gainadapt {

/// Speed-adaptive low-pass filter for noisy input streams. The cutoff rises
/// with the signal's rate of change: slow motion gets heavy smoothing, fast
/// motion tracks tightly. The first sample passes through unchanged.
class OneEuroFilter {
  public:
    OneEuroFilter(double min_cutoff, double beta, double d_cutoff = 1.0);

    /// Filters one sample. t_ms must strictly increase between calls.
    double filter(double t_ms, double value);

    void reset();

  private:
    static double smoothing_factor(double dt_s, double cutoff);

    double min_cutoff_;
    double beta_;
    double d_cutoff_;
    bool has_prev_ = false;
    double prev_t_ms_ = 0.0;
    double prev_value_ = 0.0;
    double prev_dvalue_ = 0.0;
};

/// Filters a whole (t_ms, value) series; throws on non-increasing timestamps.
std::vector<double> one_euro_filter(const std::vector<std::pair<double, double>>& series,
                                    double min_cutoff, double beta, double d_cutoff = 1.0);

}  // namespace gainadapt
