#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gainadapt/analysis.hpp"
#include "gainadapt/config.hpp"
#include "gainadapt/logio.hpp"
#include "gainadapt/pipeline.hpp"
#include "gainadapt/transfer.hpp"

namespace gainadapt {

/// One pointing task: start position, target, and the index of difficulty the
/// generator matched (id_c is the realized value).
struct Task {
    PxPoint start;
    TargetSpec target;
    double id = 0.0;
    double id_c = 0.0;
};

/// Draws a task whose realized difficulty matches a uniformly drawn ID in
/// [2, 5.5]: target width uniform in [2, 11.5] mm, center uniform on screen,
/// resampled until |id_c - id| < 0.1 and the target lies fully on screen.
Task generate_task(std::mt19937_64& rng, const DeviceSpec& dev, PxPoint start);

/// A planned stroke: motor-space amplitude along a unit direction.
struct StrokePlan {
    double motor_mm = 0.0;
    double ux = 0.0;
    double uy = 0.0;
    bool split_for_range = false;  // stroke exceeds the device range; pause mid-way
};

/// Synthetic user with intermittent control: strokes toward the target from
/// wherever the cursor is, covering p_user of the remaining distance early on,
/// and keeps a scalar belief of the effective gain learned from experience.
class UserModel {
  public:
    UserModel(const UserConfig& cfg, const DeviceSpec& dev) : cfg_(cfg), dev_(dev), belief_(cfg.belief_initial) {}

    double belief() const { return belief_; }

    /// Plans the next stroke given the cursor and target. strokes_done counts
    /// submovements already issued this trial.
    StrokePlan plan_submovement(PxPoint cursor, const TargetSpec& target, int strokes_done) const;

    /// Executes a stroke as a bell-shaped burst of integer-count events
    /// starting at t0_ms. Returns the realized motor amplitude in mm.
    double execute_submovement(const StrokePlan& plan, double t0_ms, std::mt19937_64& rng,
                               std::vector<InputEvent>& out_events) const;

    /// Folds one stroke's experienced display/motor ratio into the belief.
    void observe(double display_mm, double motor_mm);

    int events_per_stroke() const;

  private:
    UserConfig cfg_;
    DeviceSpec dev_;
    double belief_;
};

struct TrialLog {
    Task task;
    TrialTrace trace;
    bool hit = false;
    double duration_s = 0.0;
};

/// Runs one trial: the user strokes toward the target until the cursor rests
/// within half the target width of its center, or the submovement budget runs
/// out. Only moves the cursor; analysis happens afterwards.
TrialLog run_trial(const SessionConfig& cfg, UserModel& user, const GainTable& table, Task task,
                   std::mt19937_64& rng);

/// Observer for per-trial outputs; all hooks are optional.
class SessionSink {
  public:
    virtual ~SessionSink() = default;
    virtual void on_trial(int /*index*/, const TrialLog&, const std::vector<SubmovementRecord>&) {}
    virtual void on_snapshot(int /*index*/, const GainTable&) {}
};

struct SessionResult {
    std::vector<BlockMetrics> blocks;
    std::vector<double> p_trace;  // aim-point estimate after each trial
    GainTable final_table;
    std::vector<double> initial_gains;
    std::vector<long> bin_update_counts;
    int trials = 0;
    int hits = 0;
};

/// Runs a full session from the config's initial table: tasks chain from each
/// landing position, every hit trial's events feed the analysis pipeline, and
/// the gain table evolves trial by trial. Fully determined by cfg.seed.
SessionResult run_session(const SessionConfig& cfg, SessionSink* sink = nullptr);

}  // namespace gainadapt
