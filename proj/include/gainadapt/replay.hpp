#pragma once

#include <iosfwd>
#include <vector>

#include "gainadapt/config.hpp"
#include "gainadapt/logio.hpp"
#include "gainadapt/pipeline.hpp"

namespace gainadapt {

struct ReplayResult {
    GainTable final_table;
    AimPointFilter final_filter;
    int trials_seen = 0;
    int trials_processed = 0;  // hit trials fed through the pipeline
};

/// Callback receiving each replayed trial's analysis output.
class ReplaySink {
  public:
    virtual ~ReplaySink() = default;
    virtual void on_trial(int /*trial_id*/, const TrialTrace&, const std::vector<SubmovementRecord>&) {}
};

///// Reconstructs a recorded session against the config's initial gain table:
/// the cursor starts at screen center, every trial's events move it through
/// the evolving table, and trials that ended in a click run through the full
/// analysis pipeline. update_gains = false analyzes without touching gains.
ReplayResult replay_log(const SessionConfig& cfg, const std::vector<LoggedTrial>& trials,
                        bool update_gains = true, ReplaySink* sink = nullptr);

ReplayResult replay_log(const SessionConfig& cfg, std::istream& event_stream,
                        bool update_gains = true, ReplaySink* sink = nullptr);

}  // namespace gainadapt
