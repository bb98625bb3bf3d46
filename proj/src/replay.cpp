#include "gainadapt/replay.hpp"

#include <istream>

namespace gainadapt {

ReplayResult replay_log(const SessionConfig& cfg, const std::vector<LoggedTrial>& trials,
                        bool update_gains, ReplaySink* sink) {
    cfg.validate();
    GainTable table = cfg.gain_table.make_table();
    AimPointFilter filter = cfg.kalman.make_filter();
    TrialProcessor processor(cfg, table, filter);

    ReplayResult result{table, filter, 0, 0};
    PxPoint home{cfg.device.screen_w / 2, cfg.device.screen_h / 2};

    for (const LoggedTrial& lt : trials) {
        TrialTrace trace;
        trace.target = lt.target;
        trace.events = lt.events;
        fill_effective_displacements(trace, cfg.input_filter);

        CursorState cursor{home.x, home.y, 0.0, 0.0};
        trace.path.push_back({cursor.x, cursor.y});
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            apply_input(cursor, trace.eff_dx[i], trace.eff_dy[i], cfg.device, table);
            trace.path.push_back({cursor.x, cursor.y});
        }
        home = trace.path.back();
        ++result.trials_seen;

        if (lt.hit && !trace.events.empty()) {
            std::vector<SubmovementRecord> records = processor.process(trace, update_gains);
            ++result.trials_processed;
            if (sink) sink->on_trial(lt.trial, trace, records);
        }
    }

    result.final_table = table;
    result.final_filter = filter;
    return result;
}

ReplayResult replay_log(const SessionConfig& cfg, std::istream& event_stream, bool update_gains,
                        ReplaySink* sink) {
    return replay_log(cfg, read_event_log(event_stream), update_gains, sink);
}

}  // namespace gainadapt
