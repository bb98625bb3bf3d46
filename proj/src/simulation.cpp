#include "gainadapt/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gainadapt/one_euro.hpp"

namespace gainadapt {

Task generate_task(std::mt19937_64& rng, const DeviceSpec& dev, PxPoint start) {
    std::uniform_real_distribution<double> id_dist(2.0, 5.5);
    std::uniform_real_distribution<double> w_dist(2.0, 11.5);
    std::uniform_real_distribution<double> x_dist(0.0, dev.screen_w);
    std::uniform_real_distribution<double> y_dist(0.0, dev.screen_h);

    Task task;
    task.start = start;
    task.id = id_dist(rng);
    for (long attempt = 0; attempt < 100000; ++attempt) {
        TargetSpec t;
        t.width_mm = w_dist(rng);
        t.cx = x_dist(rng);
        t.cy = y_dist(rng);
        double dist_mm = dev.px_to_mm(std::hypot(t.cx - start.x, t.cy - start.y));
        double id_c = std::log2(1.0 + dist_mm / t.width_mm);
        if (std::abs(id_c - task.id) < 0.1 && t.on_screen(dev)) {
            task.target = t;
            task.id_c = id_c;
            return task;
        }
    }
    throw std::runtime_error("task generation: no matching target after 100000 draws");
}

StrokePlan UserModel::plan_submovement(PxPoint cursor, const TargetSpec& target, int strokes_done) const {
    StrokePlan plan;
    double dx = target.cx - cursor.x;
    double dy = target.cy - cursor.y;
    double dist_px = std::hypot(dx, dy);
    if (dist_px == 0.0) return plan;
    plan.ux = dx / dist_px;
    plan.uy = dy / dist_px;

    double remaining_mm = dev_.px_to_mm(dist_px);
    double coverage = strokes_done < 2 ? cfg_.p_user : 1.0;
    double desired_mm = coverage * remaining_mm / belief_;
    if (desired_mm > cfg_.stroke_range_mm) {
        if (cfg_.clutch_mode) {
            plan.motor_mm = desired_mm;
            plan.split_for_range = true;
        } else {
            plan.motor_mm = cfg_.stroke_range_mm;
        }
    } else {
        plan.motor_mm = desired_mm;
    }
    return plan;
}

int UserModel::events_per_stroke() const {
    if (cfg_.peak_speed_scale > 0.0) {
        // A bell peaks at 1.875 * amplitude / duration; a peak speed of
        // peak_speed_scale * amplitude therefore fixes the event count.
        int n = static_cast<int>(std::lround(1.875 * dev_.freq_in / cfg_.peak_speed_scale));
        return std::max(n, 5);
    }
    return cfg_.events_per_submovement;
}

double UserModel::execute_submovement(const StrokePlan& plan, double t0_ms, std::mt19937_64& rng,
                                      std::vector<InputEvent>& out_events) const {
    double realized = plan.motor_mm;
    if (cfg_.noise_k > 0.0 && plan.motor_mm > 0.0) {
        std::normal_distribution<double> noise(plan.motor_mm, cfg_.noise_k * plan.motor_mm);
        realized = std::max(noise(rng), 0.0);
    }

    const int n = events_per_stroke();
    const double dt_ms = 1000.0 / dev_.freq_in;

    // Bell-shaped speed profile, zero at both ends, quantized to counts with
    // carried remainders so the emitted total tracks the realized amplitude.
    std::vector<double> weight(n);
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) {
        double tau = static_cast<double>(k) / (n - 1);
        weight[k] = tau * tau * (1.0 - tau) * (1.0 - tau);
        wsum += weight[k];
    }

    double total_cx = realized * dev_.res_in * plan.ux;
    double total_cy = realized * dev_.res_in * plan.uy;
    double cum = 0.0;
    long emitted_x = 0;
    long emitted_y = 0;
    double range_cross_mm = cfg_.stroke_range_mm;
    for (int k = 0; k < n; ++k) {
        cum += weight[k] / wsum;
        long cx = std::lround(total_cx * cum);
        long cy = std::lround(total_cy * cum);
        InputEvent e;
        e.t_ms = t0_ms + dt_ms * k;
        if (plan.split_for_range && realized * cum > range_cross_mm) e.t_ms += cfg_.clutch_gap_ms;
        e.dx = static_cast<int>(cx - emitted_x);
        e.dy = static_cast<int>(cy - emitted_y);
        emitted_x = cx;
        emitted_y = cy;
        out_events.push_back(e);
    }
    return realized;
}

void UserModel::observe(double display_mm, double motor_mm) {
    if (motor_mm < 0.05) return;
    double ratio = display_mm / motor_mm;
    belief_ += cfg_.belief_alpha * (ratio - belief_);
    belief_ = std::max(belief_, 0.01);
}

TrialLog run_trial(const SessionConfig& cfg, UserModel& user, const GainTable& table, Task task,
                   std::mt19937_64& rng) {
    TrialLog log;
    log.task = task;
    log.trace.target = task.target;

    CursorState cursor{task.start.x, task.start.y, 0.0, 0.0};
    log.trace.path.push_back({cursor.x, cursor.y});

    OneEuroFilter fx(cfg.input_filter.min_cutoff, cfg.input_filter.beta);
    OneEuroFilter fy(cfg.input_filter.min_cutoff, cfg.input_filter.beta);

    const double dt_ms = 1000.0 / cfg.device.freq_in;
    const double radius_px = task.target.radius_px(cfg.device);
    double t_next = 0.0;

    for (int stroke = 0; stroke < cfg.session.max_submovements; ++stroke) {
        StrokePlan plan = user.plan_submovement({cursor.x, cursor.y}, task.target, stroke);
        if (plan.motor_mm <= 0.0) break;

        std::size_t first_event = log.trace.events.size();
        double realized = user.execute_submovement(plan, t_next, rng, log.trace.events);

        PxPoint stroke_start{cursor.x, cursor.y};
        for (std::size_t i = first_event; i < log.trace.events.size(); ++i) {
            const InputEvent& e = log.trace.events[i];
            double edx = e.dx;
            double edy = e.dy;
            if (cfg.input_filter.enabled) {
                edx = fx.filter(e.t_ms, e.dx);
                edy = fy.filter(e.t_ms, e.dy);
            }
            log.trace.eff_dx.push_back(edx);
            log.trace.eff_dy.push_back(edy);
            apply_input(cursor, edx, edy, cfg.device, table);
            log.trace.path.push_back({cursor.x, cursor.y});
        }

        double display_mm = cfg.device.px_to_mm(
            std::hypot(cursor.x - stroke_start.x, cursor.y - stroke_start.y));
        user.observe(display_mm, realized);

        t_next = log.trace.events.back().t_ms + std::max(cfg.user.pause_ms, dt_ms);

        double dist_px = std::hypot(task.target.cx - cursor.x, task.target.cy - cursor.y);
        if (dist_px <= radius_px) {
            log.hit = true;
            break;
        }
    }

    log.duration_s = log.trace.events.empty() ? 0.0 : log.trace.events.back().t_ms / 1000.0;
    return log;
}

SessionResult run_session(const SessionConfig& cfg, SessionSink* sink) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    GainTable table = cfg.gain_table.make_table();
    AimPointFilter filter = cfg.kalman.make_filter();
    UserModel user(cfg.user, cfg.device);
    TrialProcessor processor(cfg, table, filter);

    SessionResult result{{}, {}, table, table.gains(), {}, 0, 0};

    PxPoint cursor_home{cfg.device.screen_w / 2, cfg.device.screen_h / 2};

    double abs_R_sum = 0.0;
    long abs_R_count = 0;
    long submovement_count = 0;
    long processed_trials = 0;
    double duration_sum = 0.0;
    int block_start = 0;

    for (int trial = 0; trial < cfg.session.trials; ++trial) {
        Task task = generate_task(rng, cfg.device, cursor_home);
        TrialLog log = run_trial(cfg, user, table, task, rng);
        cursor_home = log.trace.path.back();

        std::vector<SubmovementRecord> records;
        if (log.hit && !log.trace.events.empty()) {
            records = processor.process(log.trace);
            ++processed_trials;
            submovement_count += static_cast<long>(records.size());
            for (const SubmovementRecord& r : records) {
                if (r.R_mm) {
                    abs_R_sum += std::abs(*r.R_mm);
                    ++abs_R_count;
                }
            }
            ++result.hits;
        }
        duration_sum += log.duration_s;
        result.p_trace.push_back(filter.p());
        ++result.trials;

        if (sink) {
            sink->on_trial(trial, log, records);
            if (cfg.session.snapshot_every > 0 && (trial + 1) % cfg.session.snapshot_every == 0)
                sink->on_snapshot(trial, table);
        }

        bool block_end = (trial + 1) % cfg.session.block_size == 0 || trial + 1 == cfg.session.trials;
        if (block_end) {
            BlockMetrics bm;
            bm.block = static_cast<int>(result.blocks.size()) + 1;
            int trials_in_block = trial + 1 - block_start;
            bm.mean_abs_R_mm = abs_R_count > 0 ? abs_R_sum / abs_R_count : 0.0;
            bm.submovements_per_trial =
                processed_trials > 0 ? static_cast<double>(submovement_count) / processed_trials : 0.0;
            bm.completion_proxy_s = trials_in_block > 0 ? duration_sum / trials_in_block : 0.0;
            result.blocks.push_back(bm);
            abs_R_sum = 0.0;
            abs_R_count = 0;
            submovement_count = 0;
            processed_trials = 0;
            duration_sum = 0.0;
            block_start = trial + 1;
        }
    }

    result.final_table = table;
    result.bin_update_counts = processor.bin_update_counts();
    return result;
}

}  // namespace gainadapt
