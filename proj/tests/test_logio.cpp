#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "gainadapt/logio.hpp"

using namespace gainadapt;

namespace {

std::string parse_error(const std::string& line, std::size_t line_no = 1) {
    try {
        parse_event_line(line, line_no);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("event line round trip preserves every field bit for bit") {
    LogEvent e;
    e.trial = 17;
    e.t_ms = 1000.0 / 60.0 * 7.0;  // awkward fraction
    e.dx = -3;
    e.dy = 12;
    e.target_cx = 640.123456789012345;
    e.target_cy = 1.0 / 3.0;
    e.target_w_mm = 11.4999999999999996;
    e.click = true;

    std::ostringstream out;
    write_event_line(out, e);
    std::string line = out.str();
    REQUIRE(line.back() == '\n');
    line.pop_back();

    LogEvent back = parse_event_line(line, 1);
    CHECK(back.trial == e.trial);
    CHECK(back.t_ms == e.t_ms);
    CHECK(back.dx == e.dx);
    CHECK(back.dy == e.dy);
    CHECK(back.target_cx == e.target_cx);
    CHECK(back.target_cy == e.target_cy);
    CHECK(back.target_w_mm == e.target_w_mm);
    CHECK(back.click == e.click);
}

TEST_CASE("random event lines survive the round trip") {
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> real(0.0, 2000.0);
    std::uniform_int_distribution<int> count(-200, 200);
    for (int rep = 0; rep < 500; ++rep) {
        LogEvent e;
        e.trial = static_cast<int>(rng() % 1000);
        e.t_ms = real(rng);
        e.dx = count(rng);
        e.dy = count(rng);
        e.target_cx = real(rng);
        e.target_cy = real(rng);
        e.target_w_mm = real(rng) + 0.001;
        e.click = rng() % 2 == 0;
        std::ostringstream out;
        write_event_line(out, e);
        LogEvent back = parse_event_line(out.str().substr(0, out.str().size() - 1), 1);
        CHECK(back.t_ms == e.t_ms);
        CHECK(back.target_cx == e.target_cx);
        CHECK(back.target_cy == e.target_cy);
        CHECK(back.target_w_mm == e.target_w_mm);
        CHECK(back.dx == e.dx);
        CHECK(back.dy == e.dy);
    }
}

TEST_CASE("malformed event lines name the line and the problem") {
    std::string msg = parse_error("this is not json", 3);
    CHECK(msg.find("trajectory line 3") != std::string::npos);
    CHECK(msg.find("not valid JSON") != std::string::npos);

    msg = parse_error(R"({"trial": 0})", 9);
    CHECK(msg.find("trajectory line 9") != std::string::npos);
    CHECK(msg.find("missing field") != std::string::npos);

    msg = parse_error(
        R"({"trial": 0, "t_ms": 0, "dx": 1.5, "dy": 0, "target_cx": 0, "target_cy": 0, "target_w_mm": 5, "click": false})");
    CHECK(msg.find("\"dx\"") != std::string::npos);
    CHECK(msg.find("integer") != std::string::npos);

    msg = parse_error(
        R"({"trial": 0, "t_ms": 0, "dx": 1, "dy": 0, "target_cx": 0, "target_cy": 0, "target_w_mm": 5, "click": "yes"})");
    CHECK(msg.find("\"click\"") != std::string::npos);

    msg = parse_error(
        R"({"trial": 0, "t_ms": 0, "dx": 1, "dy": 0, "target_cx": 0, "target_cy": 0, "target_w_mm": 0, "click": false})");
    CHECK(msg.find("target_w_mm") != std::string::npos);

    msg = parse_error("[1, 2, 3]");
    CHECK(msg.find("JSON object") != std::string::npos);
}

TEST_CASE("log reading groups consecutive lines into trials") {
    std::ostringstream out;
    LogEvent e;
    e.target_w_mm = 5.0;
    e.trial = 0;
    for (int i = 0; i < 3; ++i) {
        e.t_ms = i * 8.0;
        e.dx = i;
        e.click = false;
        write_event_line(out, e);
    }
    e.trial = 1;
    e.target_cx = 300.0;
    for (int i = 0; i < 2; ++i) {
        e.t_ms = i * 8.0;
        e.dx = 10 + i;
        e.click = i == 1;  // this trial ends in a hit
        write_event_line(out, e);
    }

    std::istringstream in(out.str() + "\n\n");  // trailing blank lines are fine
    std::vector<LoggedTrial> trials = read_event_log(in);
    REQUIRE(trials.size() == 2);
    CHECK(trials[0].trial == 0);
    CHECK(trials[0].events.size() == 3);
    CHECK(trials[0].hit == false);
    CHECK(trials[0].events[2].dx == 2);
    CHECK(trials[1].trial == 1);
    CHECK(trials[1].events.size() == 2);
    CHECK(trials[1].hit == true);
    CHECK(trials[1].target.cx == 300.0);
}

TEST_CASE("gain table csv round trip is exact") {
    GainTable t(0.0079, 6, 1.0);
    t.gains() = {1.0, 1.0 / 3.0, 0.1 + 0.2, 5e-5, 123456.789012345678, 0.94};

    std::ostringstream out;
    write_gain_csv(out, t);
    std::string text = out.str();
    CHECK(text.rfind("bin_start_mps,gain\n", 0) == 0);

    std::istringstream in(text);
    GainCsv back = read_gain_csv(in);
    REQUIRE(back.gains.size() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(back.bin_starts[j] == t.bin_start(j));
        CHECK(back.gains[j] == t.gain_at(j));
    }
}

TEST_CASE("gain csv rejects bad input") {
    std::istringstream no_header("0,1\n");
    CHECK_THROWS_AS(read_gain_csv(no_header), std::invalid_argument);

    std::istringstream empty("bin_start_mps,gain\n");
    CHECK_THROWS_AS(read_gain_csv(empty), std::invalid_argument);

    std::istringstream bad_row("bin_start_mps,gain\n0,1\nx,2\n");
    try {
        read_gain_csv(bad_row);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    std::istringstream one_col("bin_start_mps,gain\n0.5\n");
    CHECK_THROWS_AS(read_gain_csv(one_col), std::invalid_argument);

    std::istringstream trailing("bin_start_mps,gain\n0,1tail\n");
    CHECK_THROWS_AS(read_gain_csv(trailing), std::invalid_argument);
}

TEST_CASE("metrics csv layout") {
    std::vector<BlockMetrics> blocks = {{1, 8.25, 3.5, 1.75}, {2, 4.0, 2.25, 1.5}};
    std::ostringstream out;
    write_metrics_csv(out, blocks);
    CHECK(out.str() ==
          "block,mean_abs_R_mm,submovements_per_trial,completion_proxy_s\n"
          "1,8.25,3.5,1.75\n"
          "2,4,2.25,1.5\n");
}

TEST_CASE("submovement report lines") {
    SubmovementRecord r;
    r.cls = SubmovementClass::interrupted;
    r.ballistic = true;
    r.clutched = true;
    r.d_target_mm = 50.0;
    r.d_c_mm = 20.0;
    r.max_ang_dev_deg = 12.5;
    r.R_mm = 27.0;
    r.occupancy = {1, 0, 0, 1, 1};

    std::ostringstream out;
    write_submovement_line(out, 4, 1, r);
    std::string line = out.str();
    CHECK(line.find("\"class\":\"interrupted\"") != std::string::npos);
    CHECK(line.find("\"R_mm\":27.0") != std::string::npos);
    CHECK(line.find("\"occupied_bins\":[0,3,4]") != std::string::npos);
    CHECK(line.find("\"trial\":4") != std::string::npos);
    CHECK(line.find("\"index\":1") != std::string::npos);

    SUBCASE("no aiming error for unaimed submovements") {
        r.R_mm.reset();
        r.cls = SubmovementClass::unaimed;
        std::ostringstream out2;
        write_submovement_line(out2, 0, 0, r);
        CHECK(out2.str().find("R_mm") == std::string::npos);
        CHECK(out2.str().find("\"class\":\"unaimed\"") != std::string::npos);
    }
}
