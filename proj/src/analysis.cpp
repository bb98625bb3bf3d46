#include "gainadapt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gainadapt {

bool TargetSpec::on_screen(const DeviceSpec& dev) const {
    double r = radius_px(dev);
    return cx - r >= 0.0 && cx + r <= dev.screen_w - 1 && cy - r >= 0.0 && cy + r <= dev.screen_h - 1;
}

const char* to_string(SubmovementClass c) {
    switch (c) {
        case SubmovementClass::normal: return "normal";
        case SubmovementClass::interrupted: return "interrupted";
        case SubmovementClass::unaimed: return "unaimed";
    }
    return "unknown";
}

double projected_distance(PxPoint start, PxPoint end, const TargetSpec& target, const DeviceSpec& dev) {
    double tx = target.cx - start.x;
    double ty = target.cy - start.y;
    double len = std::hypot(tx, ty);
    if (len == 0.0) return 0.0;
    double proj_px = ((end.x - start.x) * tx + (end.y - start.y) * ty) / len;
    return dev.px_to_mm(proj_px);
}

double max_angular_deviation(std::span<const PxPoint> path) {
    if (path.size() < 3) return 0.0;
    PxPoint first = path.front();
    PxPoint last = path.back();
    double cx = last.x - first.x;
    double cy = last.y - first.y;
    double chord = std::hypot(cx, cy);

    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        double px = path[i].x - first.x;
        double py = path[i].y - first.y;
        double plen = std::hypot(px, py);
        if (plen == 0.0) continue;
        if (chord == 0.0) return 180.0;
        double c = std::clamp((px * cx + py * cy) / (plen * chord), -1.0, 1.0);
        worst = std::max(worst, std::acos(c) * 180.0 / std::numbers::pi);
    }
    return worst;
}

void classify(std::vector<SubmovementRecord>& records, const ClassifyParams& params) {
    int normals_before = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        SubmovementRecord& r = records[i];
        bool is_last = i + 1 == records.size();
        r.clutched = !is_last && r.max_gap_ms > params.clutch_threshold_ms;

        double overshoot = std::max(r.d_c_mm - r.d_target_mm, 0.0);
        if (r.degenerate || r.max_ang_dev_deg > params.max_angle_deg ||
            overshoot > params.overshoot_factor * r.d_target_mm) {
            r.cls = SubmovementClass::unaimed;
        } else if (r.d_c_mm < params.halfway_factor * r.d_target_mm || r.clutched) {
            r.cls = SubmovementClass::interrupted;
        } else {
            r.cls = SubmovementClass::normal;
        }

        r.ballistic = normals_before < 2;
        if (r.cls == SubmovementClass::normal) ++normals_before;
    }
}

AimPointFilter::AimPointFilter(double q, double r, double initial_p, double initial_cov)
    : q_(q), r_(r), p_(initial_p), cov_(initial_cov) {
    if (!(q > 0.0)) throw std::invalid_argument("aim filter: q must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("aim filter: r must be > 0");
    if (initial_cov < 0.0) throw std::invalid_argument("aim filter: covariance must be >= 0");
}

void AimPointFilter::update(double measured_fraction) {
    cov_ += q_;
    double k = cov_ / (cov_ + r_);
    p_ += k * (measured_fraction - p_);
    cov_ *= 1.0 - k;
}

double update_aim_point(AimPointFilter& filter, double d_target_mm, double d_c_mm) {
    if (d_target_mm != 0.0) filter.update(d_c_mm / d_target_mm);
    return filter.p();
}

double aiming_error(double p, double d_target_mm, double d_c_mm, bool ballistic) {
    double aim = ballistic ? p * d_target_mm : d_target_mm;
    return aim - d_c_mm;
}

std::vector<std::uint8_t> speed_occupancy(std::span<const double> speeds_mps, GainTable& table) {
    for (double v : speeds_mps) table.ensure_covers(v);
    std::vector<std::uint8_t> bits(table.size(), 0);
    for (double v : speeds_mps) {
        std::size_t j = std::min(table.bin_index(v), table.size() - 1);
        bits[j] = 1;
    }
    return bits;
}

std::vector<std::uint8_t> speed_occupancy(std::span<const InputEvent> events, const DeviceSpec& dev,
                                          GainTable& table) {
    std::vector<double> speeds;
    speeds.reserve(events.size());
    for (const InputEvent& e : events) speeds.push_back(input_speed(e, dev));
    return speed_occupancy(speeds, table);
}

}  // namespace gainadapt
