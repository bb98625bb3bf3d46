#include "gainadapt/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gainadapt {

using nlohmann::json;

GainTable GainTableConfig::make_table() const {
    GainTable t(bin_width, initial_bins, initial_gain);
    t.gain_floor = gain_floor;
    t.auto_grow = auto_grow;
    t.interp = interp;
    return t;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: " + field + " " + why);
}

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) fail(field, why);
}

// Pulls one scalar out of a section, leaving absent keys at their default.
template <typename T>
void get(const json& sec, const std::string& section, const char* key, T& out) {
    auto it = sec.find(key);
    if (it == sec.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        fail(section + "." + key, "has the wrong type");
    }
}

void check_keys(const json& sec, const std::string& section, std::initializer_list<const char*> known) {
    for (auto it = sec.begin(); it != sec.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) fail(section + "." + it.key(), "is not a recognized setting");
    }
}

}  // namespace

void SessionConfig::validate() const {
    device.validate();
    require(gain_table.bin_width > 0.0, "gain_table.bin_width", "must be > 0");
    require(gain_table.initial_bins > 0, "gain_table.initial_bins", "must be > 0");
    require(gain_table.initial_gain > 0.0, "gain_table.initial_gain", "must be > 0");
    require(gain_table.gain_floor > 0.0, "gain_table.gain_floor", "must be > 0");
    require(segmentation.sigma > 0.0, "segmentation.sigma", "must be > 0");
    require(segmentation.persistence >= 0.0, "segmentation.persistence", "must be >= 0");
    require(classification.max_angle_deg > 0.0, "classification.max_angle_deg", "must be > 0");
    require(classification.overshoot_factor >= 0.0, "classification.overshoot_factor", "must be >= 0");
    require(classification.halfway_factor >= 0.0 && classification.halfway_factor <= 1.0,
            "classification.halfway_factor", "must be in [0, 1]");
    require(classification.clutch_threshold_ms > 0.0, "classification.clutch_threshold_ms", "must be > 0");
    require(kalman.q > 0.0, "kalman.q", "must be > 0");
    require(kalman.r > 0.0, "kalman.r", "must be > 0");
    require(kalman.initial_cov >= 0.0, "kalman.initial_cov", "must be >= 0");
    require(optimizer.change_rate >= 0.0, "optimizer.change_rate", "must be >= 0");
    require(user.p_user > 0.0 && user.p_user <= 1.5, "user.p_user", "must be in (0, 1.5]");
    require(user.noise_k >= 0.0, "user.noise_k", "must be >= 0");
    require(user.belief_alpha > 0.0 && user.belief_alpha <= 1.0, "user.belief_alpha", "must be in (0, 1]");
    require(user.belief_initial > 0.0, "user.belief_initial", "must be > 0");
    require(user.events_per_submovement >= 5, "user.events_per_submovement", "must be >= 5");
    require(user.peak_speed_scale >= 0.0, "user.peak_speed_scale", "must be >= 0");
    require(user.stroke_range_mm > 0.0, "user.stroke_range_mm", "must be > 0");
    require(user.pause_ms >= 0.0, "user.pause_ms", "must be >= 0");
    require(user.clutch_gap_ms > 0.0, "user.clutch_gap_ms", "must be > 0");
    require(input_filter.min_cutoff > 0.0, "input_filter.min_cutoff", "must be > 0");
    require(input_filter.beta >= 0.0, "input_filter.beta", "must be >= 0");
    require(session.trials >= 0, "session.trials", "must be >= 0");
    require(session.block_size > 0, "session.block_size", "must be > 0");
    require(session.max_submovements > 0, "session.max_submovements", "must be > 0");
    require(session.snapshot_every >= 0, "session.snapshot_every", "must be >= 0");
}

SessionConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

    SessionConfig cfg;
    check_keys(root, "config",
               {"device", "gain_table", "segmentation", "classification", "kalman", "optimizer",
                "user", "input_filter", "session", "seed"});

    if (root.contains("device")) {
        const json& s = root["device"];
        check_keys(s, "device", {"res_in", "freq_in", "res_out", "screen_w", "screen_h"});
        get(s, "device", "res_in", cfg.device.res_in);
        get(s, "device", "freq_in", cfg.device.freq_in);
        get(s, "device", "res_out", cfg.device.res_out);
        get(s, "device", "screen_w", cfg.device.screen_w);
        get(s, "device", "screen_h", cfg.device.screen_h);
    }
    if (root.contains("gain_table")) {
        const json& s = root["gain_table"];
        check_keys(s, "gain_table",
                   {"bin_width", "initial_bins", "initial_gain", "gain_floor", "auto_grow", "interpolation"});
        get(s, "gain_table", "bin_width", cfg.gain_table.bin_width);
        get(s, "gain_table", "initial_bins", cfg.gain_table.initial_bins);
        get(s, "gain_table", "initial_gain", cfg.gain_table.initial_gain);
        get(s, "gain_table", "gain_floor", cfg.gain_table.gain_floor);
        get(s, "gain_table", "auto_grow", cfg.gain_table.auto_grow);
        if (s.contains("interpolation")) {
            std::string mode;
            get(s, "gain_table", "interpolation", mode);
            if (mode == "linear") cfg.gain_table.interp = GainInterp::linear;
            else if (mode == "step") cfg.gain_table.interp = GainInterp::step;
            else fail("gain_table.interpolation", "must be \"linear\" or \"step\"");
        }
    }
    if (root.contains("segmentation")) {
        const json& s = root["segmentation"];
        check_keys(s, "segmentation", {"sigma", "persistence"});
        get(s, "segmentation", "sigma", cfg.segmentation.sigma);
        get(s, "segmentation", "persistence", cfg.segmentation.persistence);
    }
    if (root.contains("classification")) {
        const json& s = root["classification"];
        check_keys(s, "classification",
                   {"max_angle_deg", "overshoot_factor", "halfway_factor", "clutch_threshold_ms"});
        get(s, "classification", "max_angle_deg", cfg.classification.max_angle_deg);
        get(s, "classification", "overshoot_factor", cfg.classification.overshoot_factor);
        get(s, "classification", "halfway_factor", cfg.classification.halfway_factor);
        get(s, "classification", "clutch_threshold_ms", cfg.classification.clutch_threshold_ms);
    }
    if (root.contains("kalman")) {
        const json& s = root["kalman"];
        check_keys(s, "kalman", {"q", "r", "initial_p", "initial_cov"});
        get(s, "kalman", "q", cfg.kalman.q);
        get(s, "kalman", "r", cfg.kalman.r);
        get(s, "kalman", "initial_p", cfg.kalman.initial_p);
        get(s, "kalman", "initial_cov", cfg.kalman.initial_cov);
    }
    if (root.contains("optimizer")) {
        const json& s = root["optimizer"];
        check_keys(s, "optimizer", {"change_rate"});
        get(s, "optimizer", "change_rate", cfg.optimizer.change_rate);
    }
    if (root.contains("user")) {
        const json& s = root["user"];
        check_keys(s, "user",
                   {"p_user", "noise_k", "belief_alpha", "belief_initial", "events_per_submovement",
                    "peak_speed_scale", "stroke_range_mm", "pause_ms", "clutch_mode", "clutch_gap_ms"});
        get(s, "user", "p_user", cfg.user.p_user);
        get(s, "user", "noise_k", cfg.user.noise_k);
        get(s, "user", "belief_alpha", cfg.user.belief_alpha);
        get(s, "user", "belief_initial", cfg.user.belief_initial);
        get(s, "user", "events_per_submovement", cfg.user.events_per_submovement);
        get(s, "user", "peak_speed_scale", cfg.user.peak_speed_scale);
        get(s, "user", "stroke_range_mm", cfg.user.stroke_range_mm);
        get(s, "user", "pause_ms", cfg.user.pause_ms);
        get(s, "user", "clutch_mode", cfg.user.clutch_mode);
        get(s, "user", "clutch_gap_ms", cfg.user.clutch_gap_ms);
    }
    if (root.contains("input_filter")) {
        const json& s = root["input_filter"];
        check_keys(s, "input_filter", {"enabled", "min_cutoff", "beta"});
        get(s, "input_filter", "enabled", cfg.input_filter.enabled);
        get(s, "input_filter", "min_cutoff", cfg.input_filter.min_cutoff);
        get(s, "input_filter", "beta", cfg.input_filter.beta);
    }
    if (root.contains("session")) {
        const json& s = root["session"];
        check_keys(s, "session", {"trials", "block_size", "max_submovements", "snapshot_every"});
        get(s, "session", "trials", cfg.session.trials);
        get(s, "session", "block_size", cfg.session.block_size);
        get(s, "session", "max_submovements", cfg.session.max_submovements);
        get(s, "session", "snapshot_every", cfg.session.snapshot_every);
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
            fail("seed", "must be a non-negative integer");
        auto v = root["seed"].get<std::int64_t>();
        if (v < 0) fail("seed", "must be a non-negative integer");
        cfg.seed = static_cast<std::uint64_t>(v);
    }

    cfg.validate();
    return cfg;
}

SessionConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const SessionConfig& cfg) {
    json root;
    root["device"] = {{"res_in", cfg.device.res_in},
                      {"freq_in", cfg.device.freq_in},
                      {"res_out", cfg.device.res_out},
                      {"screen_w", cfg.device.screen_w},
                      {"screen_h", cfg.device.screen_h}};
    root["gain_table"] = {{"bin_width", cfg.gain_table.bin_width},
                          {"initial_bins", cfg.gain_table.initial_bins},
                          {"initial_gain", cfg.gain_table.initial_gain},
                          {"gain_floor", cfg.gain_table.gain_floor},
                          {"auto_grow", cfg.gain_table.auto_grow},
                          {"interpolation", cfg.gain_table.interp == GainInterp::linear ? "linear" : "step"}};
    root["segmentation"] = {{"sigma", cfg.segmentation.sigma},
                            {"persistence", cfg.segmentation.persistence}};
    root["classification"] = {{"max_angle_deg", cfg.classification.max_angle_deg},
                              {"overshoot_factor", cfg.classification.overshoot_factor},
                              {"halfway_factor", cfg.classification.halfway_factor},
                              {"clutch_threshold_ms", cfg.classification.clutch_threshold_ms}};
    root["kalman"] = {{"q", cfg.kalman.q},
                      {"r", cfg.kalman.r},
                      {"initial_p", cfg.kalman.initial_p},
                      {"initial_cov", cfg.kalman.initial_cov}};
    root["optimizer"] = {{"change_rate", cfg.optimizer.change_rate}};
    root["user"] = {{"p_user", cfg.user.p_user},
                    {"noise_k", cfg.user.noise_k},
                    {"belief_alpha", cfg.user.belief_alpha},
                    {"belief_initial", cfg.user.belief_initial},
                    {"events_per_submovement", cfg.user.events_per_submovement},
                    {"peak_speed_scale", cfg.user.peak_speed_scale},
                    {"stroke_range_mm", cfg.user.stroke_range_mm},
                    {"pause_ms", cfg.user.pause_ms},
                    {"clutch_mode", cfg.user.clutch_mode},
                    {"clutch_gap_ms", cfg.user.clutch_gap_ms}};
    root["input_filter"] = {{"enabled", cfg.input_filter.enabled},
                            {"min_cutoff", cfg.input_filter.min_cutoff},
                            {"beta", cfg.input_filter.beta}};
    root["session"] = {{"trials", cfg.session.trials},
                       {"block_size", cfg.session.block_size},
                       {"max_submovements", cfg.session.max_submovements},
                       {"snapshot_every", cfg.session.snapshot_every}};
    root["seed"] = cfg.seed;
    return root.dump(2) + "\n";
}

}  // namespace gainadapt
