#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gainadapt/analysis.hpp"
#include "gainadapt/transfer.hpp"

namespace gainadapt {

struct GainTableConfig {
    double bin_width = 0.0079;
    std::size_t initial_bins = 128;
    double initial_gain = 1.0;
    double gain_floor = 0.01;
    bool auto_grow = true;
    GainInterp interp = GainInterp::linear;

    GainTable make_table() const;
};

struct SegmentationConfig {
    double sigma = 3.0;
    double persistence = 0.2;
};

struct KalmanConfig {
    double q = 0.2;
    double r = 40.0;
    double initial_p = 1.0;
    double initial_cov = 1.0;

    AimPointFilter make_filter() const { return AimPointFilter(q, r, initial_p, initial_cov); }
};

struct OptimizerConfig {
    double change_rate = 5e-5;
};

/// Synthetic user. Plans strokes toward the target center, covering p_user of
/// the remaining distance on early strokes, limited by the device's usable
/// range; executes them as bell-shaped count bursts with amplitude noise; and
/// tracks the experienced display/motor ratio as its internal gain belief.
struct UserConfig {
    double p_user = 0.94;
    double noise_k = 0.1;
    double belief_alpha = 0.3;
    double belief_initial = 1.0;
    int events_per_submovement = 40;
    double peak_speed_scale = 0.0;  // >0 derives the event count from it
    double stroke_range_mm = 100.0;
    double pause_ms = 40.0;
    bool clutch_mode = false;  // finish over-range strokes across a long pause
    double clutch_gap_ms = 200.0;
};

struct InputFilterConfig {
    bool enabled = false;
    double min_cutoff = 1e-5;
    double beta = 0.05;
};

struct SessionParams {
    int trials = 800;
    int block_size = 80;
    int max_submovements = 20;
    int snapshot_every = 0;
};

struct SessionConfig {
    DeviceSpec device;
    GainTableConfig gain_table;
    SegmentationConfig segmentation;
    ClassifyParams classification;
    KalmanConfig kalman;
    OptimizerConfig optimizer;
    UserConfig user;
    InputFilterConfig input_filter;
    SessionParams session;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Parses a config from JSON text laid over the defaults above. Unknown keys
/// and out-of-range values throw std::invalid_argument naming the field.
SessionConfig parse_config(const std::string& json_text);

/// Reads and parses a config file; throws std::runtime_error if unreadable.
SessionConfig load_config(const std::string& path);

/// Serializes the full effective config as pretty-printed JSON.
std::string config_to_json(const SessionConfig& cfg);

}  // namespace gainadapt
