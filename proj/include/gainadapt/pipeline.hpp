#pragma once

#include <vector>

#include "gainadapt/analysis.hpp"
#include "gainadapt/config.hpp"
#include "gainadapt/optimizer.hpp"
#include "gainadapt/transfer.hpp"

namespace gainadapt {

/// A trial as seen by the post-trial analysis: the raw events, the effective
/// per-event displacements (raw counts, or their smoothed values when the
/// input filter is on), the cursor position before each event plus the final
/// one, and the trial's target. path.size() == events.size() + 1.
struct TrialTrace {
    std::vector<InputEvent> events;
    std::vector<double> eff_dx;
    std::vector<double> eff_dy;
    std::vector<PxPoint> path;
    TargetSpec target;
};

/// Fills eff_dx/eff_dy from the raw events, running both axes through the
/// input filter when it is enabled. Deterministic for identical events.
void fill_effective_displacements(TrialTrace& trace, const InputFilterConfig& filter_cfg);

/// Runs the post-trial analysis chain on one trial: segments the speed
/// series, classifies submovements, advances the aim-point filter, computes
/// aiming errors and speed occupancy, and applies the resulting gain update.
/// Mutates the table and filter; set update_gains = false to only analyze.
class TrialProcessor {
  public:
    TrialProcessor(const SessionConfig& cfg, GainTable& table, AimPointFilter& filter)
        : cfg_(cfg), table_(table), filter_(filter) {}

    std::vector<SubmovementRecord> process(const TrialTrace& trace, bool update_gains = true);

    // Bins claimed by at least one trial update so far, by bin index.
    const std::vector<long>& bin_update_counts() const { return bin_update_counts_; }

  private:
    const SessionConfig& cfg_;
    GainTable& table_;
    AimPointFilter& filter_;
    std::vector<long> bin_update_counts_;
};

}  // namespace gainadapt
