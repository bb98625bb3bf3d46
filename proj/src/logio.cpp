#include "gainadapt/logio.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace gainadapt {

using nlohmann::json;

void write_event_line(std::ostream& out, const LogEvent& e) {
    json j = {{"trial", e.trial},   {"t_ms", e.t_ms},
              {"dx", e.dx},         {"dy", e.dy},
              {"target_cx", e.target_cx}, {"target_cy", e.target_cy},
              {"target_w_mm", e.target_w_mm}, {"click", e.click}};
    out << j.dump() << "\n";
}

LogEvent parse_event_line(const std::string& line, std::size_t line_no) {
    const std::string where = "trajectory line " + std::to_string(line_no);
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(where + ": not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument(where + ": record must be a JSON object");

    LogEvent e;
    auto pull = [&](const char* key, auto& out, bool(json::*is_type)() const, const char* type_name) {
        auto it = j.find(key);
        if (it == j.end()) throw std::invalid_argument(where + ": missing field \"" + key + "\"");
        if (!((*it).*is_type)()) throw std::invalid_argument(where + ": field \"" + key + "\" must be " + type_name);
        out = it->get<std::decay_t<decltype(out)>>();
    };
    pull("trial", e.trial, &json::is_number_integer, "an integer");
    pull("t_ms", e.t_ms, &json::is_number, "a number");
    pull("dx", e.dx, &json::is_number_integer, "an integer");
    pull("dy", e.dy, &json::is_number_integer, "an integer");
    pull("target_cx", e.target_cx, &json::is_number, "a number");
    pull("target_cy", e.target_cy, &json::is_number, "a number");
    pull("target_w_mm", e.target_w_mm, &json::is_number, "a number");
    pull("click", e.click, &json::is_boolean, "a boolean");
    if (!(e.target_w_mm > 0.0)) throw std::invalid_argument(where + ": target_w_mm must be > 0");
    if (!std::isfinite(e.t_ms)) throw std::invalid_argument(where + ": t_ms must be finite");
    return e;
}

std::vector<LoggedTrial> read_event_log(std::istream& in) {
    std::vector<LoggedTrial> trials;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        LogEvent e = parse_event_line(line, line_no);
        if (trials.empty() || trials.back().trial != e.trial) {
            LoggedTrial t;
            t.trial = e.trial;
            t.target = TargetSpec{e.target_cx, e.target_cy, e.target_w_mm};
            trials.push_back(std::move(t));
        }
        LoggedTrial& t = trials.back();
        t.events.push_back(InputEvent{e.t_ms, e.dx, e.dy});
        t.hit = e.click;
    }
    return trials;
}

void write_gain_csv(std::ostream& out, const GainTable& table) {
    out << "bin_start_mps,gain\n";
    char buf[64];
    for (std::size_t j = 0; j < table.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.bin_start(j), table.gain_at(j));
        out << buf;
    }
}

GainCsv read_gain_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "bin_start_mps,gain")
        throw std::invalid_argument("gain csv: missing or bad header");
    GainCsv csv;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = "gain csv line " + std::to_string(line_no);
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument(where + ": expected two columns");
        try {
            std::size_t used = 0;
            double start = std::stod(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("");
            std::string rest = line.substr(comma + 1);
            double gain = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("");
            csv.bin_starts.push_back(start);
            csv.gains.push_back(gain);
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ": values must be numbers");
        }
    }
    if (csv.gains.empty()) throw std::invalid_argument("gain csv: no bins");
    return csv;
}

void write_metrics_csv(std::ostream& out, const std::vector<BlockMetrics>& blocks) {
    out << "block,mean_abs_R_mm,submovements_per_trial,completion_proxy_s\n";
    char buf[160];
    for (const BlockMetrics& b : blocks) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g\n", b.block, b.mean_abs_R_mm,
                      b.submovements_per_trial, b.completion_proxy_s);
        out << buf;
    }
}

void write_submovement_line(std::ostream& out, int trial, int index, const SubmovementRecord& rec) {
    json j = {{"trial", trial},
              {"index", index},
              {"class", to_string(rec.cls)},
              {"ballistic", rec.ballistic},
              {"clutched", rec.clutched},
              {"d_target_mm", rec.d_target_mm},
              {"d_c_mm", rec.d_c_mm},
              {"max_ang_dev_deg", rec.max_ang_dev_deg}};
    if (rec.R_mm) j["R_mm"] = *rec.R_mm;
    json bins = json::array();
    for (std::size_t b = 0; b < rec.occupancy.size(); ++b)
        if (rec.occupancy[b]) bins.push_back(b);
    j["occupied_bins"] = std::move(bins);
    out << j.dump() << "\n";
}

}  // namespace gainadapt
