#include "gainadapt/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gainadapt {

void DeviceSpec::validate() const {
    if (!(res_in > 0.0)) throw std::invalid_argument("device: res_in must be > 0");
    if (!(freq_in > 0.0)) throw std::invalid_argument("device: freq_in must be > 0");
    if (!(res_out > 0.0)) throw std::invalid_argument("device: res_out must be > 0");
    if (screen_w <= 0 || screen_h <= 0) throw std::invalid_argument("device: screen size must be positive");
}

double input_speed(double dx, double dy, const DeviceSpec& dev) {
    return dev.speed_per_count() * std::sqrt(dx * dx + dy * dy);
}

double input_speed(const InputEvent& e, const DeviceSpec& dev) {
    return input_speed(static_cast<double>(e.dx), static_cast<double>(e.dy), dev);
}

GainTable::GainTable(double bin_width, std::size_t bins, double initial_gain)
    : bin_width_(bin_width), gains_(bins, initial_gain) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("gain table: bin width must be > 0");
    if (bins == 0) throw std::invalid_argument("gain table: need at least one bin");
    if (!(initial_gain > 0.0)) throw std::invalid_argument("gain table: initial gain must be > 0");
}

std::size_t GainTable::bin_index(double speed) const {
    if (speed < 0.0) throw std::invalid_argument("gain table: negative speed");
    return static_cast<std::size_t>(speed / bin_width_);
}

double GainTable::interpolate(double speed) const {
    if (speed < 0.0) throw std::invalid_argument("gain table: negative speed");
    if (interp == GainInterp::step) {
        return gains_[std::min(bin_index(speed), gains_.size() - 1)];
    }
    // Linear between bin centers, constant beyond the first/last center.
    if (speed <= bin_center(0)) return gains_.front();
    if (speed >= bin_center(gains_.size() - 1)) return gains_.back();
    auto j = static_cast<std::size_t>(speed / bin_width_ - 0.5);
    if (j + 1 >= gains_.size()) j = gains_.size() - 2;
    double t = (speed - bin_center(j)) / bin_width_;
    if (t < 0.0) { --j; t += 1.0; }
    return gains_[j] + t * (gains_[j + 1] - gains_[j]);
}

void GainTable::grow_to(std::size_t bins) {
    constexpr std::size_t kMaxBins = 1u << 20;
    if (bins > kMaxBins) throw std::invalid_argument("gain table: growth beyond supported size");
    if (bins > gains_.size()) gains_.resize(bins, gains_.back());
}

void GainTable::ensure_covers(double speed) {
    std::size_t j = bin_index(speed);
    if (j >= gains_.size() && auto_grow) grow_to(j + 1);
}

void GainTable::clamp_floor() {
    for (double& g : gains_) g = std::max(g, gain_floor);
}

void apply_input(CursorState& c, double dx, double dy, const DeviceSpec& dev, const GainTable& table) {
    double g = table.interpolate(input_speed(dx, dy, dev));
    double scale = g * dev.res_out / dev.res_in;
    double fx = c.rx + dx * scale;
    double fy = c.ry + dy * scale;
    double ix = std::trunc(fx);
    double iy = std::trunc(fy);
    c.rx = fx - ix;
    c.ry = fy - iy;
    int nx = c.x + static_cast<int>(ix);
    int ny = c.y + static_cast<int>(iy);
    if (nx < 0 || nx >= dev.screen_w) {
        nx = std::clamp(nx, 0, dev.screen_w - 1);
        c.rx = 0.0;
    }
    if (ny < 0 || ny >= dev.screen_h) {
        ny = std::clamp(ny, 0, dev.screen_h - 1);
        c.ry = 0.0;
    }
    c.x = nx;
    c.y = ny;
}

void apply_input(CursorState& c, const InputEvent& e, const DeviceSpec& dev, const GainTable& table) {
    apply_input(c, static_cast<double>(e.dx), static_cast<double>(e.dy), dev, table);
}

}  // namespace gainadapt
