#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gainadapt/segmentation.hpp"
#include "gainadapt/transfer.hpp"

namespace gainadapt {

struct PxPoint {
    int x = 0;
    int y = 0;
};

/// Circular target: center in pixels, width (diameter) in mm.
struct TargetSpec {
    double cx = 0.0;
    double cy = 0.0;
    double width_mm = 0.0;

    double radius_px(const DeviceSpec& dev) const { return dev.mm_to_px(width_mm) / 2.0; }
    bool on_screen(const DeviceSpec& dev) const;
};

enum class SubmovementClass { normal, interrupted, unaimed };

const char* to_string(SubmovementClass c);

/// One segmented submovement with its aiming geometry and classification.
/// d_target_mm: distance from the submovement's start to the target center.
/// d_c_mm: movement extent projected onto the start-to-target direction.
/// Both in mm; R_mm is absent for unaimed submovements.
struct SubmovementRecord {
    SubmovementSpan span;
    double d_target_mm = 0.0;
    double d_c_mm = 0.0;
    double max_ang_dev_deg = 0.0;
    double max_gap_ms = 0.0;
    bool degenerate = false;  // started on the target center; excluded from updates
    SubmovementClass cls = SubmovementClass::normal;
    bool ballistic = true;
    bool clutched = false;
    std::optional<double> R_mm;
    std::vector<std::uint8_t> occupancy;
};

/// Signed distance covered toward the target: the cursor's net displacement
/// projected onto the unit vector from start position to target center, in mm.
/// Negative when the movement went away from the target.
double projected_distance(PxPoint start, PxPoint end, const TargetSpec& target, const DeviceSpec& dev);

/// Largest angle, in degrees, between the chord (first to last point) and any
/// ray from the first point to an interior path point. Paths with fewer than
/// three distinct points score 0; a path returning to its start scores 180.
double max_angular_deviation(std::span<const PxPoint> path);

struct ClassifyParams {
    double max_angle_deg = 45.0;
    double overshoot_factor = 0.5;
    double halfway_factor = 0.5;
    double clutch_threshold_ms = 130.0;
};

/// Classifies a trial's submovements in order, filling cls, ballistic and
/// clutched from the geometry fields. A submovement is unaimed when it strays
/// past max_angle_deg or overshoots by more than overshoot_factor * d_target;
/// otherwise interrupted when it stops short of halfway_factor * d_target or
/// pauses longer than the clutch threshold (never for the trial's last
/// submovement); otherwise normal. Submovements stay ballistic through the
/// second normal one and are non-ballistic afterwards.
void classify(std::vector<SubmovementRecord>& records, const ClassifyParams& params);

/// Scalar filter tracking the fraction of the remaining distance a ballistic
/// submovement aims to cover.
class AimPointFilter {
  public:
    AimPointFilter(double q = 0.2, double r = 40.0, double initial_p = 1.0, double initial_cov = 1.0);

    double p() const { return p_; }
    double cov() const { return cov_; }

    /// One predict/correct step against a measured aim fraction.
    void update(double measured_fraction);

  private:
    double q_;
    double r_;
    double p_;
    double cov_;
};

/// Feeds the covered fraction d_c / d_target into the filter and returns the
/// new estimate. A zero d_target leaves the filter untouched.
double update_aim_point(AimPointFilter& filter, double d_target_mm, double d_c_mm);

/// Per-submovement aiming error in mm: how far the movement fell short of its
/// aim point (positive = undershoot, negative = overshoot). Ballistic
/// submovements aim at p * d_target, later ones at the target itself.
double aiming_error(double p, double d_target_mm, double d_c_mm, bool ballistic);

/// Bitset over gain-table bins: bit j is set when some event speed falls in
/// bin j. The table grows first when it allows that; otherwise out-of-range
/// speeds count toward the last bin. Result length equals the table size.
std::vector<std::uint8_t> speed_occupancy(std::span<const double> speeds_mps, GainTable& table);
std::vector<std::uint8_t> speed_occupancy(std::span<const InputEvent> events, const DeviceSpec& dev,
                                          GainTable& table);

}  // namespace gainadapt
