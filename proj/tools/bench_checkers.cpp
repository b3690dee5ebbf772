// bench_checkers.cpp - Times the linear checkers against the serial
// definitional ones and asserts they agree.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "mcfifo/bounds.hpp"
#include "mcfifo/reference.hpp"
#include "mcfifo/simulate.hpp"
#include "mcfifo/traffic.hpp"
#include "mcfifo/verify.hpp"

using namespace mcfifo;

namespace {

double seconds_of(const std::chrono::steady_clock::time_point& a,
                  const std::chrono::steady_clock::time_point& b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class Fn>
auto timed(const char* name, Fn&& fn, double& out_s) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    auto t1 = std::chrono::steady_clock::now();
    out_s = seconds_of(t0, t1);
    std::cout << "  " << name << ": " << out_s << " s\n";
    return result;
}

SystemConfig bench_config() {
    SystemConfig c;
    c.name = "bench";
    c.classes.push_back({1, Rat(1000000L), Rat(400000L), Rat(100000L), Rat(12000L)});
    c.classes.push_back({2, Rat(100000000L), Rat(40000000L), Rat(1000000L), Rat(12000L)});
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark: fast checkers vs serial definitional checkers"};
    uint64_t seed = 7;
    std::string horizon = "1/20";  // small default: the references are quadratic
    app.add_option("--seed", seed, "trace seed (default: 7)");
    app.add_option("--horizon", horizon, "trace horizon in seconds (default: 1/20)");
    CLI11_PARSE(app, argc, argv);

    auto h = Rat::parse_quantity(horizon);
    if (!h) {
        std::cerr << "cannot parse horizon '" << horizon << "'\n";
        return 2;
    }

    SystemConfig config = bench_config();
    Trace trace = shaped_random(config, seed, *h, Rat(9, 10));
    Schedule sched = simulate(config, trace);
    FlowView agg = flow_view(trace, sched, std::nullopt);
    Curve beta = aggregate_service_curve(config);
    std::cout << "trace: " << trace.packets.size() << " packets, horizon " << h->str()
              << " s, seed " << seed << "\n";

    bool ok = true;
    double fast_s = 0, ref_s = 0;

    std::cout << "conformance:\n";
    auto cf = timed("fast   ", [&] { return conformance_check(config, trace); }, fast_s);
    auto cr = timed("serial ", [&] { return reference::conformance_check(config, trace); }, ref_s);
    if (cf.has_value() != cr.has_value()) {
        std::cout << "  MISMATCH: fast and serial disagree on pass/fail\n";
        ok = false;
    } else {
        std::cout << "  agree (" << (cf ? "violation" : "pass") << "), speedup "
                  << (fast_s > 0 ? ref_s / fast_s : 0.0) << "x\n";
    }

    std::cout << "service curve (aggregate):\n";
    auto sf = timed("fast   ", [&] { return check_service_curve(agg, beta, "sc"); }, fast_s);
    auto sr = timed("serial ",
                    [&] { return reference::check_service_curve(agg, beta, "sc"); }, ref_s);
    if (sf.size() != sr.size()) {
        std::cout << "  MISMATCH: " << sf.size() << " vs " << sr.size() << " violations\n";
        ok = false;
    } else {
        std::cout << "  agree (" << sf.size() << " violations), speedup "
                  << (fast_s > 0 ? ref_s / fast_s : 0.0) << "x\n";
    }

    std::cout << "backlog supremum:\n";
    auto bf = timed("fast   ", [&] { return backlog_process(trace, sched).sup; }, fast_s);
    auto br = timed("serial ", [&] { return reference::backlog_sup(trace, sched); }, ref_s);
    if (bf != br) {
        std::cout << "  MISMATCH: " << bf.str() << " vs " << br.str() << "\n";
        ok = false;
    } else {
        std::cout << "  agree (" << bf.str() << " bits), speedup "
                  << (fast_s > 0 ? ref_s / fast_s : 0.0) << "x\n";
    }

    std::cout << (ok ? "all checkers agree\n" : "CHECKERS DISAGREE\n");
    return ok ? 0 : 1;
}
