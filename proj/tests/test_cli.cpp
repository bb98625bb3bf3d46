#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "gainadapt_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunResult run(const std::string& args) {
    fs::path out_file = scratch() / "stdout.txt";
    fs::path err_file = scratch() / "stderr.txt";
    std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " >" + out_file.string() +
                      " 2>" + err_file.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// A small session most cases share; simulated once.
const fs::path& session_dir() {
    static fs::path dir = [] {
        fs::path d = scratch() / "run1";
        RunResult r = run("simulate --trials 3 --seed 99 --out " + d.string());
        REQUIRE(r.code == 0);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);                       // a subcommand is required
    CHECK(run("frobnicate").code == 2);             // unknown subcommand
    CHECK(run("simulate --no-such-flag").code == 2);
    CHECK(run("replay").code == 2);                 // missing log positional
    CHECK(run("--help").code == 0);
    CHECK(contains(run("--help").out, "simulate"));
}

TEST_CASE("config problems exit with 2 and name the cause") {
    RunResult missing = run("simulate --config " + (scratch() / "nope.json").string());
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "cannot open file"));

    fs::path garbled = scratch() / "garbled.json";
    spit(garbled, "this is not json");
    RunResult bad = run("simulate --config " + garbled.string());
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "not valid JSON"));

    fs::path unknown = scratch() / "unknown.json";
    spit(unknown, "{\"gian_table\": {}}");
    RunResult key = run("simulate --config " + unknown.string());
    CHECK(key.code == 2);
    CHECK(contains(key.err, "not a recognized setting"));
}

TEST_CASE("simulate writes the session outputs") {
    const fs::path& d = session_dir();
    CHECK(fs::exists(d / "trials.jsonl"));
    CHECK(fs::file_size(d / "trials.jsonl") > 0);
    CHECK(fs::exists(d / "gain_final.csv"));
    std::string metrics = slurp(d / "metrics.csv");
    CHECK(contains(metrics, "block,mean_abs_R_mm,submovements_per_trial,completion_proxy_s"));
    CHECK(contains(metrics, "\n1,"));  // at least one data row
}

TEST_CASE("equal seeds give byte-identical outputs") {
    fs::path d2 = scratch() / "run2";
    RunResult r = run("simulate --trials 3 --seed 99 --out " + d2.string());
    REQUIRE(r.code == 0);
    CHECK(slurp(session_dir() / "trials.jsonl") == slurp(d2 / "trials.jsonl"));
    CHECK(slurp(session_dir() / "gain_final.csv") == slurp(d2 / "gain_final.csv"));

    fs::path d3 = scratch() / "run3";
    RunResult other = run("simulate --trials 3 --seed 100 --out " + d3.string());
    REQUIRE(other.code == 0);
    CHECK(slurp(session_dir() / "trials.jsonl") != slurp(d3 / "trials.jsonl"));
}

TEST_CASE("an empty session still writes well-formed files") {
    fs::path d = scratch() / "empty";
    RunResult r = run("simulate --trials 0 --out " + d.string());
    CHECK(r.code == 0);
    CHECK(contains(r.out, "trials: 0"));
    CHECK(slurp(d / "metrics.csv") == "block,mean_abs_R_mm,submovements_per_trial,completion_proxy_s\n");
    CHECK(fs::file_size(d / "trials.jsonl") == 0);
}

TEST_CASE("snapshots appear on the requested cadence") {
    fs::path d = scratch() / "snap";
    RunResult r = run("simulate --trials 4 --seed 1 --snapshot-every 2 --out " + d.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(d / "gains" / "trial_00002.csv"));
    CHECK(fs::exists(d / "gains" / "trial_00004.csv"));
    CHECK(!fs::exists(d / "gains" / "trial_00003.csv"));
}

TEST_CASE("replaying a session's log reproduces its final gains") {
    fs::path d = scratch() / "rep1";
    RunResult r = run("replay " + (session_dir() / "trials.jsonl").string() + " --out " + d.string());
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "analyzed:"));
    CHECK(contains(r.out, "submovements:"));
    CHECK(slurp(d / "gain_final.csv") == slurp(session_dir() / "gain_final.csv"));
    CHECK(fs::file_size(d / "submovements.jsonl") > 0);
}

TEST_CASE("analyze reports without touching gains") {
    fs::path d = scratch() / "ana1";
    RunResult r = run("analyze " + (session_dir() / "trials.jsonl").string() + " --out " + d.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(d / "submovements.jsonl"));
    CHECK(!fs::exists(d / "gain_final.csv"));

    fs::path f = scratch() / "ana_filtered";
    RunResult one = run("analyze " + (session_dir() / "trials.jsonl").string() + " --trial 1 --out " +
                        f.string());
    REQUIRE(one.code == 0);
    std::istringstream lines(slurp(f / "submovements.jsonl"));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        CHECK(contains(line, "\"trial\":1"));
        ++n;
    }
    CHECK(n > 0);
}

TEST_CASE("log problems map to the documented exit codes") {
    RunResult gone = run("replay " + (scratch() / "no_such.jsonl").string());
    CHECK(gone.code == 3);
    CHECK(contains(gone.err, "cannot open trajectory log"));

    // A valid first line followed by garbage: the error names line 2.
    std::string good_line = slurp(session_dir() / "trials.jsonl");
    good_line.resize(good_line.find('\n') + 1);
    fs::path bad = scratch() / "bad.jsonl";
    spit(bad, good_line + "garbage\n");
    RunResult r = run("replay " + bad.string() + " --out " + (scratch() / "bad_out").string());
    CHECK(r.code == 2);
    CHECK(contains(r.err, "trajectory line 2"));
}

TEST_CASE("a blocked output path exits with 3") {
    fs::path blocker = scratch() / "blocker";
    spit(blocker, "in the way");
    RunResult r = run("simulate --trials 1 --out " + (blocker / "sub").string());
    CHECK(r.code == 3);
}

TEST_CASE("export summarizes a gain table") {
    RunResult r = run("export " + (session_dir() / "gain_final.csv").string());
    CHECK(r.code == 0);
    CHECK(contains(r.out, "bins: "));
    CHECK(contains(r.out, "peak gain speed"));

    CHECK(run("export " + (scratch() / "no_table.csv").string()).code == 3);

    fs::path mangled = scratch() / "mangled.csv";
    spit(mangled, "nonsense\n1,2\n");
    CHECK(run("export " + mangled.string()).code == 2);
}

TEST_CASE("sweeps run one session per overlay") {
    fs::path sweep = scratch() / "sweep.json";
    spit(sweep, "[{\"session\": {\"trials\": 1}}, {\"session\": {\"trials\": 2}}]");
    fs::path d = scratch() / "swp";
    RunResult r = run("simulate --seed 5 --sweep " + sweep.string() + " --out " + d.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(d / "sweep_000" / "metrics.csv"));
    CHECK(fs::exists(d / "sweep_001" / "metrics.csv"));
    CHECK(fs::file_size(d / "sweep_001" / "trials.jsonl") >
          fs::file_size(d / "sweep_000" / "trials.jsonl"));

    fs::path notarray = scratch() / "notarray.json";
    spit(notarray, "{\"a\": 1}");
    RunResult bad = run("simulate --sweep " + notarray.string());
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "must be an array"));
}
