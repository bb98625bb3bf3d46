#include "gainadapt/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "gainadapt/one_euro.hpp"
#include "gainadapt/segmentation.hpp"

namespace gainadapt {

void fill_effective_displacements(TrialTrace& trace, const InputFilterConfig& filter_cfg) {
    trace.eff_dx.clear();
    trace.eff_dy.clear();
    trace.eff_dx.reserve(trace.events.size());
    trace.eff_dy.reserve(trace.events.size());
    if (!filter_cfg.enabled) {
        for (const InputEvent& e : trace.events) {
            trace.eff_dx.push_back(e.dx);
            trace.eff_dy.push_back(e.dy);
        }
        return;
    }
    OneEuroFilter fx(filter_cfg.min_cutoff, filter_cfg.beta);
    OneEuroFilter fy(filter_cfg.min_cutoff, filter_cfg.beta);
    for (const InputEvent& e : trace.events) {
        trace.eff_dx.push_back(fx.filter(e.t_ms, e.dx));
        trace.eff_dy.push_back(fy.filter(e.t_ms, e.dy));
    }
}

std::vector<SubmovementRecord> TrialProcessor::process(const TrialTrace& trace, bool update_gains) {
    if (trace.path.size() != trace.events.size() + 1)
        throw std::invalid_argument("trial trace: path must have one more point than events");
    if (trace.eff_dx.size() != trace.events.size() || trace.eff_dy.size() != trace.events.size())
        throw std::invalid_argument("trial trace: effective displacements not filled");

    std::vector<double> speeds_counts;
    speeds_counts.reserve(trace.events.size());
    for (std::size_t i = 0; i < trace.events.size(); ++i)
        speeds_counts.push_back(std::hypot(trace.eff_dx[i], trace.eff_dy[i]));

    std::vector<SubmovementSpan> spans =
        segment_submovements(speeds_counts, cfg_.segmentation.sigma, cfg_.segmentation.persistence);

    std::vector<SubmovementRecord> records;
    records.reserve(spans.size());
    if (spans.empty()) return records;

    for (const SubmovementSpan& span : spans) {
        SubmovementRecord rec;
        rec.span = span;
        PxPoint start = trace.path[span.start];
        PxPoint end = trace.path[span.end];
        double d_target_px = std::hypot(trace.target.cx - start.x, trace.target.cy - start.y);
        rec.d_target_mm = cfg_.device.px_to_mm(d_target_px);
        rec.degenerate = d_target_px == 0.0;
        rec.d_c_mm = projected_distance(start, end, trace.target, cfg_.device);
        rec.max_ang_dev_deg = max_angular_deviation(
            std::span<const PxPoint>(trace.path.data() + span.start, span.end - span.start + 1));
        double max_gap = 0.0;
        for (std::size_t i = span.start + 1; i <= span.end; ++i)
            max_gap = std::max(max_gap, trace.events[i].t_ms - trace.events[i - 1].t_ms);
        rec.max_gap_ms = max_gap;
        records.push_back(std::move(rec));
    }

    classify(records, cfg_.classification);

    // Grow the table once per trial so every occupancy has the final width.
    double v_max = 0.0;
    for (std::size_t i = 0; i < trace.events.size(); ++i)
        v_max = std::max(v_max, input_speed(trace.eff_dx[i], trace.eff_dy[i], cfg_.device));
    table_.ensure_covers(v_max);

    for (SubmovementRecord& rec : records) {
        bool feeds_filter = rec.cls == SubmovementClass::normal && rec.ballistic && !rec.degenerate;
        if (feeds_filter) update_aim_point(filter_, rec.d_target_mm, rec.d_c_mm);
        if (rec.cls != SubmovementClass::unaimed && !rec.degenerate)
            rec.R_mm = aiming_error(filter_.p(), rec.d_target_mm, rec.d_c_mm, rec.ballistic);

        std::vector<double> speeds;
        speeds.reserve(rec.span.end - rec.span.start);
        for (std::size_t i = rec.span.start; i < rec.span.end; ++i)
            speeds.push_back(input_speed(trace.eff_dx[i], trace.eff_dy[i], cfg_.device));
        rec.occupancy = speed_occupancy(speeds, table_);
    }

    if (update_gains) {
        std::vector<SubmovementUpdate> eligible;
        for (const SubmovementRecord& rec : records)
            if (rec.R_mm) eligible.push_back({*rec.R_mm, rec.occupancy});

        if (!eligible.empty()) {
            UpdateBatch batch = compute_deltas(eligible, ChangeRate{cfg_.optimizer.change_rate});
            apply_update(table_, batch);
            if (bin_update_counts_.size() < batch.bins()) bin_update_counts_.resize(batch.bins(), 0);
            for (std::size_t j = 0; j < batch.bins(); ++j)
                if (batch.claimed[j]) ++bin_update_counts_[j];
        }
    }
    return records;
}

}  // namespace gainadapt
