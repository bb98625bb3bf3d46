#include "gainadapt/one_euro.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gainadapt {

OneEuroFilter::OneEuroFilter(double min_cutoff, double beta, double d_cutoff)
    : min_cutoff_(min_cutoff), beta_(beta), d_cutoff_(d_cutoff) {
    if (!(min_cutoff > 0.0)) throw std::invalid_argument("one euro: min_cutoff must be > 0");
    if (beta < 0.0) throw std::invalid_argument("one euro: beta must be >= 0");
    if (!(d_cutoff > 0.0)) throw std::invalid_argument("one euro: d_cutoff must be > 0");
}

double OneEuroFilter::smoothing_factor(double dt_s, double cutoff) {
    double tau = 1.0 / (2.0 * std::numbers::pi * cutoff);
    return 1.0 / (1.0 + tau / dt_s);
}

double OneEuroFilter::filter(double t_ms, double value) {
    if (!has_prev_) {
        has_prev_ = true;
        prev_t_ms_ = t_ms;
        prev_value_ = value;
        prev_dvalue_ = 0.0;
        return value;
    }
    if (!(t_ms > prev_t_ms_)) throw std::invalid_argument("one euro: timestamps must strictly increase");
    double dt = (t_ms - prev_t_ms_) / 1000.0;

    double dvalue = (value - prev_value_) / dt;
    double ad = smoothing_factor(dt, d_cutoff_);
    double edvalue = prev_dvalue_ + ad * (dvalue - prev_dvalue_);

    double cutoff = min_cutoff_ + beta_ * std::abs(edvalue);
    double a = smoothing_factor(dt, cutoff);
    double filtered = prev_value_ + a * (value - prev_value_);

    prev_t_ms_ = t_ms;
    prev_value_ = filtered;
    prev_dvalue_ = edvalue;
    return filtered;
}

void OneEuroFilter::reset() { has_prev_ = false; }

std::vector<double> one_euro_filter(const std::vector<std::pair<double, double>>& series,
                                    double min_cutoff, double beta, double d_cutoff) {
    OneEuroFilter f(min_cutoff, beta, d_cutoff);
    std::vector<double> out;
    out.reserve(series.size());
    for (const auto& [t, v] : series) out.push_back(f.filter(t, v));
    return out;
}

}  // namespace gainadapt
