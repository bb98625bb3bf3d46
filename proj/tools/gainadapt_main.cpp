#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gainadapt/config.hpp"
#include "gainadapt/logio.hpp"
#include "gainadapt/replay.hpp"
#include "gainadapt/simulation.hpp"

namespace fs = std::filesystem;
using namespace gainadapt;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> snapshot_every;
};

SessionConfig effective_config(const CommonOpts& opts) {
    SessionConfig cfg;
    if (!opts.config_path.empty()) cfg = parse_config(read_file(opts.config_path));
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.trials) cfg.session.trials = *opts.trials;
    if (opts.snapshot_every) cfg.session.snapshot_every = *opts.snapshot_every;
    cfg.validate();
    return cfg;
}

class SimulateFileSink : public SessionSink {
  public:
    SimulateFileSink(std::ofstream trials, fs::path gains_dir)
        : trials_(std::move(trials)), gains_dir_(std::move(gains_dir)) {}

    void on_trial(int index, const TrialLog& log, const std::vector<SubmovementRecord>&) override {
        const auto& events = log.trace.events;
        for (std::size_t i = 0; i < events.size(); ++i) {
            LogEvent e;
            e.trial = index;
            e.t_ms = events[i].t_ms;
            e.dx = events[i].dx;
            e.dy = events[i].dy;
            e.target_cx = log.task.target.cx;
            e.target_cy = log.task.target.cy;
            e.target_w_mm = log.task.target.width_mm;
            e.click = log.hit && i + 1 == events.size();
            write_event_line(trials_, e);
        }
        if (!trials_) throw std::runtime_error("cannot write trial log");
    }

    void on_snapshot(int index, const GainTable& table) override {
        char name[32];
        std::snprintf(name, sizeof name, "trial_%05d.csv", index + 1);
        auto out = open_out(gains_dir_ / name);
        write_gain_csv(out, table);
    }

  private:
    std::ofstream trials_;
    fs::path gains_dir_;
};

void run_simulation(const SessionConfig& cfg, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string());
    fs::path gains_dir = out_dir / "gains";
    if (cfg.session.snapshot_every > 0) {
        fs::create_directories(gains_dir, ec);
        if (ec) throw std::runtime_error("cannot create output directory " + gains_dir.string());
    }

    SimulateFileSink sink(open_out(out_dir / "trials.jsonl"), gains_dir);
    SessionResult result = run_session(cfg, &sink);

    auto metrics = open_out(out_dir / "metrics.csv");
    write_metrics_csv(metrics, result.blocks);
    auto gains = open_out(out_dir / "gain_final.csv");
    write_gain_csv(gains, result.final_table);

    std::cout << "trials: " << result.trials << "  hits: " << result.hits;
    if (!result.p_trace.empty()) std::cout << "  final aim fraction: " << result.p_trace.back();
    std::cout << "\n";
}

int cmd_simulate(const CommonOpts& opts, const std::string& sweep_path) {
    if (sweep_path.empty()) {
        run_simulation(effective_config(opts), opts.out_dir);
        return 0;
    }

    nlohmann::json sweep;
    try {
        sweep = nlohmann::json::parse(read_file(sweep_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("sweep file: not valid JSON: ") + e.what());
    }
    if (!sweep.is_array()) throw std::invalid_argument("sweep file: top level must be an array");

    nlohmann::json base = nlohmann::json::object();
    if (!opts.config_path.empty()) base = nlohmann::json::parse(read_file(opts.config_path));

    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (!sweep[i].is_object())
            throw std::invalid_argument("sweep entry " + std::to_string(i) + ": must be an object");
        nlohmann::json merged = base;
        merged.merge_patch(sweep[i]);

        CommonOpts entry = opts;
        entry.config_path.clear();
        SessionConfig cfg = parse_config(merged.dump());
        if (opts.seed) cfg.seed = *opts.seed;
        if (opts.trials) cfg.session.trials = *opts.trials;
        if (opts.snapshot_every) cfg.session.snapshot_every = *opts.snapshot_every;
        cfg.validate();

        char name[32];
        std::snprintf(name, sizeof name, "sweep_%03zu", i);
        run_simulation(cfg, fs::path(opts.out_dir) / name);
    }
    return 0;
}

class ReportFileSink : public ReplaySink {
  public:
    ReportFileSink(std::ofstream out, std::optional<int> only_trial)
        : out_(std::move(out)), only_trial_(only_trial) {}

    void on_trial(int trial_id, const TrialTrace&, const std::vector<SubmovementRecord>& records) override {
        if (only_trial_ && trial_id != *only_trial_) return;
        for (std::size_t i = 0; i < records.size(); ++i)
            write_submovement_line(out_, trial_id, static_cast<int>(i), records[i]);
        for (const SubmovementRecord& r : records) ++class_counts_[static_cast<int>(r.cls)];
        if (!out_) throw std::runtime_error("cannot write submovement report");
    }

    void print_summary(std::ostream& os) const {
        os << "submovements: " << class_counts_[0] << " normal, " << class_counts_[1]
           << " interrupted, " << class_counts_[2] << " unaimed\n";
    }

  private:
    std::ofstream out_;
    std::optional<int> only_trial_;
    long class_counts_[3] = {0, 0, 0};
};

int cmd_replay(const CommonOpts& opts, const std::string& log_path, bool update_gains,
               std::optional<int> only_trial) {
    SessionConfig cfg = effective_config(opts);

    std::ifstream log_in(log_path, std::ios::binary);
    if (!log_in) throw std::runtime_error("cannot open trajectory log: " + log_path);

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + opts.out_dir);

    ReportFileSink sink(open_out(fs::path(opts.out_dir) / "submovements.jsonl"), only_trial);
    ReplayResult result = replay_log(cfg, log_in, update_gains, &sink);

    if (update_gains) {
        auto gains = open_out(fs::path(opts.out_dir) / "gain_final.csv");
        write_gain_csv(gains, result.final_table);
    }
    std::cout << "trials: " << result.trials_seen << "  analyzed: " << result.trials_processed << "\n";
    sink.print_summary(std::cout);
    return 0;
}

int cmd_export(const std::string& gains_path) {
    std::ifstream in(gains_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open gain table: " + gains_path);
    GainCsv csv = read_gain_csv(in);

    double width = csv.bin_starts.size() >= 2 ? csv.bin_starts[1] - csv.bin_starts[0] : 0.0;
    std::size_t min_j = 0;
    std::size_t max_j = 0;
    for (std::size_t j = 1; j < csv.gains.size(); ++j) {
        if (csv.gains[j] < csv.gains[min_j]) min_j = j;
        if (csv.gains[j] > csv.gains[max_j]) max_j = j;
    }

    std::printf("bins: %zu, bin width: %g m/s\n", csv.gains.size(), width);
    for (std::size_t j = 0; j < csv.gains.size(); ++j)
        std::printf("[%g, %g) m/s  gain %.6g\n", csv.bin_starts[j], csv.bin_starts[j] + width,
                    csv.gains[j]);
    std::printf("min gain %.6g at %g m/s\n", csv.gains[min_j], csv.bin_starts[min_j]);
    std::printf("max gain %.6g at %g m/s\n", csv.gains[max_j], csv.bin_starts[max_j]);
    std::printf("peak gain speed: %g m/s\n", csv.bin_starts[max_j] + width / 2.0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive speed-binned pointing gain: simulator and analysis tools"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string sweep_path;
    std::string log_path;
    std::string gains_path;
    std::optional<int> only_trial;

    auto add_common = [&](CLI::App* sub, bool with_run_flags) {
        sub->add_option("--config", opts.config_path, "JSON config file");
        sub->add_option("--out", opts.out_dir, "output directory");
        if (with_run_flags) {
            sub->add_option("--seed", opts.seed, "override the config seed");
            sub->add_option("--trials", opts.trials, "override the trial count");
            sub->add_option("--snapshot-every", opts.snapshot_every,
                            "write a gain snapshot every N trials");
        }
    };

    CLI::App* sim = app.add_subcommand("simulate", "run a synthetic-user session");
    add_common(sim, true);
    sim->add_option("--sweep", sweep_path, "JSON array of config overlays; one run per entry");

    CLI::App* rep = app.add_subcommand("replay", "re-run a recorded trajectory log");
    add_common(rep, false);
    rep->add_option("log", log_path, "trajectory log (JSONL)")->required();

    CLI::App* ana = app.add_subcommand("analyze", "analyze a trajectory log without touching gains");
    add_common(ana, false);
    ana->add_option("log", log_path, "trajectory log (JSONL)")->required();
    ana->add_option("--trial", only_trial, "report only this trial");

    CLI::App* exp = app.add_subcommand("export", "summarize a gain table CSV");
    exp->add_option("gains", gains_path, "gain table CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(opts, sweep_path);
        if (rep->parsed()) return cmd_replay(opts, log_path, true, std::nullopt);
        if (ana->parsed()) return cmd_replay(opts, log_path, false, only_trial);
        if (exp->parsed()) return cmd_export(gains_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
