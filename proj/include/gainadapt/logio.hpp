#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gainadapt/analysis.hpp"
#include "gainadapt/transfer.hpp"

namespace gainadapt {

/// One line of the trajectory log: an input event tagged with its trial and
/// the trial's target. click marks the selection that ended a hit trial.
struct LogEvent {
    int trial = 0;
    double t_ms = 0.0;
    int dx = 0;
    int dy = 0;
    double target_cx = 0.0;
    double target_cy = 0.0;
    double target_w_mm = 0.0;
    bool click = false;
};

/// Events of one trial, grouped from consecutive log lines.
struct LoggedTrial {
    int trial = 0;
    TargetSpec target;
    std::vector<InputEvent> events;
    bool hit = false;  // last event carried the click
};

void write_event_line(std::ostream& out, const LogEvent& e);

/// Parses one JSONL line; line_no is used in error messages (1-based).
LogEvent parse_event_line(const std::string& line, std::size_t line_no);

/// Reads a whole trajectory log, grouping consecutive lines by trial id.
/// Blank lines are skipped; malformed lines throw std::invalid_argument.
std::vector<LoggedTrial> read_event_log(std::istream& in);

/// Gain table snapshot as CSV: header `bin_start_mps,gain`, one bin per line,
/// values printed so they read back to the identical doubles.
void write_gain_csv(std::ostream& out, const GainTable& table);

struct GainCsv {
    std::vector<double> bin_starts;
    std::vector<double> gains;
};

GainCsv read_gain_csv(std::istream& in);

/// Per-block session metrics CSV with a fixed header.
struct BlockMetrics {
    int block = 0;
    double mean_abs_R_mm = 0.0;
    double submovements_per_trial = 0.0;
    double completion_proxy_s = 0.0;
};

void write_metrics_csv(std::ostream& out, const std::vector<BlockMetrics>& blocks);

/// One submovement report line: classification plus aiming numbers, JSONL.
void write_submovement_line(std::ostream& out, int trial, int index, const SubmovementRecord& rec);

}  // namespace gainadapt
