#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gainadapt {

/// Gaussian smoothing with kernel truncated at +-3 sigma, renormalized to sum
/// to 1. Boundaries replicate the edge sample. sigma <= 0 returns the input.
std::vector<double> gaussian_smooth(std::span<const double> series, double sigma);

/// One min-max pair from topological persistence pairing. The maximum is the
/// saddle where the basin born at min_idx merges into an older basin;
/// persistence = series[max_idx] - series[min_idx].
struct PersistencePair {
    std::size_t min_idx = 0;
    std::size_t max_idx = 0;
    double persistence = 0.0;
};

/// Full pairing of a series: all finite pairs plus the global minimum, which
/// never dies. Equal values are resolved toward the lower index, and plateau
/// extrema are represented by their leftmost sample.
struct PersistenceResult {
    std::vector<PersistencePair> pairs;  // ordered by merge time
    std::size_t global_min_idx = 0;
};

PersistenceResult persistence_pairs(std::span<const double> series);
// Reuses the result's buffers; for tight loops over many series.
void persistence_pairs(std::span<const double> series, PersistenceResult& out);

/// Extrema surviving a persistence filter, as strictly alternating
/// min/max/min/... index sequences. Every retained maximum is flanked by
/// retained minima on both sides.
struct ExtremaSet {
    std::vector<std::size_t> minima;
    std::vector<std::size_t> maxima;
    std::size_t global_max_index = npos;  // highest retained maximum

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Pairs the series' extrema and drops pairs whose persistence is below
/// `threshold`. The global minimum is always retained.
ExtremaSet persistence_extrema(std::span<const double> series, double threshold);

/// Half-open run of samples belonging to one submovement: a speed minimum, the
/// peak, and the closing minimum. Consecutive spans share their boundary index.
struct SubmovementSpan {
    std::size_t start = 0;
    std::size_t peak = 0;
    std::size_t end = 0;
};

/// Splits a speed series into submovements: smooth, find persistent extrema,
/// then emit one span per retained maximum at or after the global maximum.
/// Speeds are typically raw per-event displacement magnitudes in counts; the
/// defaults (sigma = 3 samples, threshold = 0.2) assume that scale.
std::vector<SubmovementSpan> segment_submovements(std::span<const double> series,
                                                  double sigma = 3.0,
                                                  double threshold = 0.2);

}  // namespace gainadapt
