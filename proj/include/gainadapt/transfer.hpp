#pragma once

#include <cstddef>
#include <vector>

namespace gainadapt {

/// Physical input device plus output display geometry.
/// res_in: input sensor resolution in counts per mm.
/// freq_in: input event rate in events per second.
/// res_out: display resolution in pixels per mm.
/// screen_w / screen_h: display size in pixels.
struct DeviceSpec {
    double res_in = 40.0;
    double freq_in = 125.0;
    double res_out = 1280.0 / 358.0;
    int screen_w = 1280;
    int screen_h = 800;

    // Input speed contributed by one count of displacement, in m/s.
    double speed_per_count() const { return freq_in / (res_in * 1000.0); }

    double counts_to_mm(double counts) const { return counts / res_in; }
    double px_to_mm(double px) const { return px / res_out; }
    double mm_to_px(double mm) const { return mm * res_out; }

    void validate() const;
};

/// One raw input event: timestamp in ms and integer displacement counts.
struct InputEvent {
    double t_ms = 0.0;
    int dx = 0;
    int dy = 0;
};

/// Instantaneous input speed of an event in m/s.
double input_speed(const InputEvent& e, const DeviceSpec& dev);
double input_speed(double dx, double dy, const DeviceSpec& dev);

enum class GainInterp { linear, step };

/// Speed-binned gain function. Bin j covers speeds [j*bin_width, (j+1)*bin_width).
/// Lookups interpolate between bin centers and extend the first/last gain as
/// constants beyond the covered range. Updates may grow the table instead when
/// auto_grow is set; gains are clamped from below at gain_floor after updates.
class GainTable {
  public:
    GainTable(double bin_width, std::size_t bins, double initial_gain);

    double bin_width() const { return bin_width_; }
    std::size_t size() const { return gains_.size(); }
    double bin_start(std::size_t j) const { return static_cast<double>(j) * bin_width_; }
    double bin_center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * bin_width_; }
    double gain_at(std::size_t j) const { return gains_[j]; }
    const std::vector<double>& gains() const { return gains_; }
    std::vector<double>& gains() { return gains_; }

    // Bin index a speed falls in; may be >= size() for speeds past the table.
    std::size_t bin_index(double speed) const;

    /// Gain applied at a given input speed in m/s.
    double interpolate(double speed) const;

    // Appends copies of the last gain until the table has at least `bins` bins.
    void grow_to(std::size_t bins);
    // Grows the table (when auto_grow) so `speed` falls inside a covered bin.
    void ensure_covers(double speed);

    void clamp_floor();

    GainInterp interp = GainInterp::linear;
    bool auto_grow = true;
    double gain_floor = 0.01;

  private:
    double bin_width_;
    std::vector<double> gains_;
};

/// Integer cursor position plus sub-pixel remainders carried between events.
/// Invariant: 0 <= x < screen_w, 0 <= y < screen_h, |rx| < 1, |ry| < 1.
struct CursorState {
    int x = 0;
    int y = 0;
    double rx = 0.0;
    double ry = 0.0;
};

/// Applies one event through the gain function: the displacement in counts is
/// scaled by the gain at the event's input speed, converted to pixels, and the
/// fractional pixel part is carried to the next event. Clamping at a screen
/// edge zeroes the remainder on the clamped axis.
void apply_input(CursorState& c, const InputEvent& e, const DeviceSpec& dev, const GainTable& table);
void apply_input(CursorState& c, double dx, double dy, const DeviceSpec& dev, const GainTable& table);

}  // namespace gainadapt
