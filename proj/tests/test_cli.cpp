// test_cli.cpp - Command behavior: outputs, files, exit codes, determinism.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcfifo/cli.hpp"
#include "mcfifo/json_io.hpp"
#include "mcfifo/trace.hpp"

using mcfifo::cmd_bounds;
using mcfifo::cmd_generate;
using mcfifo::cmd_simulate;
using mcfifo::cmd_sweep;
using mcfifo::cmd_verify;
using mcfifo::kExitError;
using mcfifo::kExitPass;
using mcfifo::kExitViolations;
using mcfifo::Rat;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Temp files removed when the fixture goes out of scope.
struct TempFiles {
    std::vector<std::string> paths;
    ~TempFiles() {
        for (const std::string& p : paths) std::remove(p.c_str());
    }
    const std::string& add(const std::string& p) {
        paths.push_back(p);
        return paths.back();
    }
};

std::string write_s1(TempFiles& tmp) {
    const std::string& path = tmp.add("cli_s1.json");
    std::ofstream out(path);
    out << config_json(fixtures::s1()).dump();
    return path;
}

}  // namespace

TEST_CASE("bounds command renders text or json and rejects bad input") {
    TempFiles tmp;
    std::string cfg = write_s1(tmp);

    std::ostringstream out, err;
    CHECK(cmd_bounds({cfg, "both", false}, out, err) == kExitPass);
    CHECK(contains(out.str(), "system: s1"));
    CHECK(contains(out.str(), "11/100"));
    CHECK(err.str().empty());

    std::ostringstream again;
    cmd_bounds({cfg, "both", false}, again, err);
    CHECK(out.str() == again.str());  // byte-identical rerun

    std::ostringstream imp;
    CHECK(cmd_bounds({cfg, "improved", false}, imp, err) == kExitPass);
    CHECK_FALSE(contains(imp.str(), "n/a: requires sum_n"));

    std::ostringstream js;
    CHECK(cmd_bounds({cfg, "both", true}, js, err) == kExitPass);
    nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j["system"] == "s1");
    CHECK(j["improved"]["delay"]["value"]["exact"] == "11/100");

    err.str("");
    CHECK(cmd_bounds({cfg, "quick", false}, out, err) == kExitError);
    CHECK(contains(err.str(), "unknown method 'quick'"));
    err.str("");
    CHECK(cmd_bounds({"missing.json", "both", false}, out, err) == kExitError);
    CHECK(contains(err.str(), "cannot open config file"));
}

TEST_CASE("generate writes greedy and random traces deterministically") {
    TempFiles tmp;
    std::string cfg = write_s1(tmp);
    std::ostringstream out, err;

    mcfifo::GenerateCmd g;
    g.config_path = cfg;
    g.mode = "greedy";
    g.out = tmp.add("cli_greedy.trace");
    CHECK(cmd_generate(g, out, err) == kExitPass);
    CHECK(contains(out.str(), "wrote 93 packets"));
    mcfifo::Trace t = mcfifo::read_trace_file(g.out);
    CHECK(t.packets.size() == 93);
    REQUIRE_FALSE(t.header.empty());
    CHECK(contains(t.header[0], "mode=greedy config=s1 tagged=1"));

    mcfifo::GenerateCmd r;
    r.config_path = cfg;
    r.mode = "random";
    r.seed = 7;
    r.horizon = "1/4";
    r.intensity = "9/10";
    std::ostringstream run1, run2;
    CHECK(cmd_generate(r, run1, err) == kExitPass);
    CHECK(cmd_generate(r, run2, err) == kExitPass);
    CHECK(run1.str() == run2.str());
    CHECK(contains(run1.str(), "mode=random config=s1 seed=7"));
    r.seed = 8;
    std::ostringstream other;
    cmd_generate(r, other, err);
    CHECK(run1.str() != other.str());

    r.seed = 7;
    r.intensity = "0";
    std::ostringstream quiet;
    CHECK(cmd_generate(r, quiet, err) == kExitPass);
    for (std::istringstream lines(quiet.str()); lines;) {
        std::string line;
        if (!std::getline(lines, line)) break;
        REQUIRE((line.empty() || line[0] == '#'));  // headers only, no packets
    }

    err.str("");
    r.intensity = "abc";
    CHECK(cmd_generate(r, out, err) == kExitError);
    CHECK(contains(err.str(), "cannot parse intensity"));
    err.str("");
    mcfifo::GenerateCmd bad;
    bad.config_path = cfg;
    bad.mode = "adversarial";
    CHECK(cmd_generate(bad, out, err) == kExitError);
    CHECK(contains(err.str(), "unknown mode"));
}

TEST_CASE("simulate writes schedules and backlog processes") {
    TempFiles tmp;
    std::string cfg = write_s1(tmp);
    std::ostringstream out, err;

    mcfifo::GenerateCmd g;
    g.config_path = cfg;
    g.mode = "greedy";
    g.out = tmp.add("cli_sim.trace");
    REQUIRE(cmd_generate(g, out, err) == kExitPass);

    mcfifo::SimulateCmd s;
    s.config_path = cfg;
    s.trace_path = g.out;
    s.out = tmp.add("cli_sim.sched");
    s.backlog_out = tmp.add("cli_sim.backlog");
    out.str("");
    CHECK(cmd_simulate(s, out, err) == kExitPass);
    CHECK(contains(out.str(), "simulated 93 packets; max delay 11/100 s; sup backlog 1100000 bits"));

    std::ifstream sched(s.out);
    std::string text((std::istreambuf_iterator<char>(sched)), std::istreambuf_iterator<char>());
    CHECK(contains(text, "0 1 4000 11/100 11/100"));  // the tagged packet's row
    std::ifstream back(s.backlog_out);
    std::string btext((std::istreambuf_iterator<char>(back)), std::istreambuf_iterator<char>());
    CHECK(contains(btext, "0 1100000"));  // full burst queued at t = 0
    CHECK(contains(btext, "11/100 0"));   // and drained by the tagged departure

    // Without --out the schedule goes to the stream.
    mcfifo::SimulateCmd direct{cfg, g.out, "", ""};
    std::ostringstream stream;
    CHECK(cmd_simulate(direct, stream, err) == kExitPass);
    CHECK(contains(stream.str(), "0 1 4000 11/100 11/100"));

    err.str("");
    mcfifo::SimulateCmd missing{cfg, "no_such.trace", "", ""};
    CHECK(cmd_simulate(missing, out, err) == kExitError);
    CHECK(contains(err.str(), "simulate:"));
}

TEST_CASE("verify reports pass, fail, and check selections with exit codes") {
    TempFiles tmp;
    std::string cfg = write_s1(tmp);
    std::ostringstream out, err;

    mcfifo::GenerateCmd g;
    g.config_path = cfg;
    g.mode = "greedy";
    g.out = tmp.add("cli_ver.trace");
    REQUIRE(cmd_generate(g, out, err) == kExitPass);

    mcfifo::VerifyCmd v;
    v.config_path = cfg;
    v.trace_path = g.out;
    out.str("");
    CHECK(cmd_verify(v, out, err) == kExitPass);
    CHECK(contains(out.str(), "system s1: 93 packets, 11 checks run, 4 not applicable"));
    CHECK(contains(out.str(), "slack under tightest delay bound: 0 s"));
    CHECK(contains(out.str(), "PASS: no violations"));

    v.json = true;
    out.str("");
    CHECK(cmd_verify(v, out, err) == kExitPass);
    nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["pass"] == true);
    CHECK(j["packets"] == 93);
    CHECK(j["max_delay"]["exact"] == "11/100");
    v.json = false;

    v.checks = "delay";
    out.str("");
    CHECK(cmd_verify(v, out, err) == kExitPass);
    CHECK(contains(out.str(), "1 checks run, 1 not applicable"));
    v.checks = "everything";
    err.str("");
    CHECK(cmd_verify(v, out, err) == kExitError);
    CHECK(contains(err.str(), "unknown check selection 'everything'"));
    v.checks = "all";

    // A trace that overdraws class 1's bucket by one bit fails conformance.
    {
        mcfifo::Trace burst;
        burst.header.push_back("hand-built overdraft");
        for (int i = 0; i < 8; ++i) burst.packets.push_back({1, i + 1, Rat(0), Rat(12000)});
        burst.packets.push_back({1, 9, Rat(0), Rat(4001)});
        mcfifo::write_trace_file(tmp.add("cli_bad.trace"), burst);
    }
    v.trace_path = tmp.paths.back();
    out.str("");
    CHECK(cmd_verify(v, out, err) == kExitViolations);
    CHECK(contains(out.str(), "FAIL: 1 violation(s)"));
    CHECK(contains(out.str(), "conformance(class 1)"));
    v.max_print = 0;
    out.str("");
    CHECK(cmd_verify(v, out, err) == kExitViolations);
    CHECK(contains(out.str(), "... 1 more"));
}

TEST_CASE("sweep aggregates seeds and stays quiet on success") {
    TempFiles tmp;
    std::string cfg = write_s1(tmp);
    std::ostringstream out, err;

    mcfifo::SweepCmd s;
    s.config_path = cfg;
    s.seeds = 2;
    s.horizon = "1/10";
    CHECK(cmd_sweep(s, out, err) == kExitPass);
    CHECK(contains(out.str(), "sweep: 2 seeds"));
    CHECK(contains(out.str(), "0 violation(s)"));

    s.json = true;
    out.str("");
    CHECK(cmd_sweep(s, out, err) == kExitPass);
    nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["pass"] == true);
    CHECK(j["seeds"].size() == 2);
    CHECK(j["total_violations"] == 0);

    err.str("");
    s.seeds = 0;
    CHECK(cmd_sweep(s, out, err) == kExitError);
    CHECK(contains(err.str(), "--seeds must be positive"));
}
