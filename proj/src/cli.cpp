// cli.cpp - Command implementations behind the mcfifo tool.
#include "mcfifo/cli.hpp"

#include <exception>
#include <ostream>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcfifo/json_io.hpp"
#include "mcfifo/simulate.hpp"
#include "mcfifo/traffic.hpp"
#include "mcfifo/verify.hpp"

namespace mcfifo {

namespace {

Rat parse_rat_arg(const std::string& s, const char* what) {
    auto r = Rat::parse_quantity(s);
    if (!r) throw std::runtime_error(std::string("cannot parse ") + what + ": '" + s + "'");
    return *r;
}

void print_violation(std::ostream& os, const Violation& v) {
    os << "  " << v.check << ": observed " << v.observed.str() << " vs bound " << v.bound.str()
       << " (margin " << v.margin.str() << ")";
    if (v.packet >= 0) os << ", packet " << v.packet;
    if (v.time) os << ", t = " << v.time->str();
    os << "\n";
}

}  // namespace

int cmd_bounds(const BoundsCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        std::optional<Method> only;
        if (cmd.method == "direct")
            only = Method::direct;
        else if (cmd.method == "improved")
            only = Method::improved;
        else if (cmd.method != "both") {
            err << "bounds: unknown method '" << cmd.method
                << "' (use direct, improved, or both)\n";
            return kExitError;
        }
        SystemConfig config = load_config(cmd.config_path);
        BoundReport rep = compare(config);
        if (cmd.json)
            out << report_json(rep).dump(2) << "\n";
        else
            out << report_to_text(rep, only);
        return kExitPass;
    } catch (const std::exception& e) {
        err << "bounds: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_generate(const GenerateCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        SystemConfig config = load_config(cmd.config_path);
        Trace trace;
        if (cmd.mode == "greedy") {
            trace = greedy_burst(config, cmd.tagged);
        } else if (cmd.mode == "random") {
            trace = shaped_random(config, cmd.seed, parse_rat_arg(cmd.horizon, "horizon"),
                                  parse_rat_arg(cmd.intensity, "intensity"));
        } else {
            err << "generate: unknown mode '" << cmd.mode << "' (use random or greedy)\n";
            return kExitError;
        }
        if (cmd.out.empty()) {
            write_trace(out, trace);
        } else {
            write_trace_file(cmd.out, trace);
            out << "wrote " << trace.packets.size() << " packets to " << cmd.out << "\n";
        }
        return kExitPass;
    } catch (const std::exception& e) {
        err << "generate: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_simulate(const SimulateCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        SystemConfig config = load_config(cmd.config_path);
        Trace trace = read_trace_file(cmd.trace_path);
        Schedule sched = simulate(config, trace);
        if (cmd.out.empty()) {
            write_schedule(out, trace, sched);
        } else {
            write_schedule_file(cmd.out, trace, sched);
            Rat max_delay(0);
            for (const Rat& d : sched.delay) max_delay = max(max_delay, d);
            StepFn backlog = backlog_process(trace, sched);
            out << "simulated " << trace.packets.size() << " packets; max delay "
                << max_delay.str() << " s; sup backlog " << backlog.sup.str() << " bits\n";
        }
        if (!cmd.backlog_out.empty())
            write_backlog_file(cmd.backlog_out, backlog_process(trace, sched));
        return kExitPass;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_verify(const VerifyCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        std::optional<CheckSelect> which = check_select_from_name(cmd.checks);
        if (!which) {
            err << "verify: unknown check selection '" << cmd.checks
                << "' (use all, gr, sc, delay, backlog, or conformance)\n";
            return kExitError;
        }
        SystemConfig config = load_config(cmd.config_path);
        Trace trace = read_trace_file(cmd.trace_path);
        Schedule sched = simulate(config, trace);
        BoundReport rep = compare(config);
        SuiteResult res = run_suite(config, trace, sched, rep, *which);
        if (cmd.json) {
            nlohmann::json j = suite_json(res);
            j["system"] = config.name;
            j["packets"] = trace.packets.size();
            out << j.dump(2) << "\n";
        } else {
            out << "system " << config.name << ": " << trace.packets.size() << " packets, "
                << res.checks_run.size() << " checks run, " << res.skipped.size()
                << " not applicable\n";
            for (const std::string& s : res.skipped) out << "  skipped " << s << "\n";
            out << "max delay " << res.max_delay.str() << " s; sup backlog "
                << res.sup_backlog.str() << " bits\n";
            if (res.min_delay_margin)
                out << "slack under tightest delay bound: " << res.min_delay_margin->str()
                    << " s\n";
            if (res.violations.empty()) {
                out << "PASS: no violations\n";
            } else {
                out << "FAIL: " << res.violations.size() << " violation(s)\n";
                int shown = 0;
                for (const Violation& v : res.violations) {
                    if (shown++ >= cmd.max_print) {
                        out << "  ... " << (res.violations.size() - shown + 1) << " more\n";
                        break;
                    }
                    print_violation(out, v);
                }
            }
        }
        return res.violations.empty() ? kExitPass : kExitViolations;
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_sweep(const SweepCmd& cmd, std::ostream& out, std::ostream& err) {
    struct SeedResult {
        uint64_t seed = 0;
        size_t packets = 0;
        Rat max_delay;
        Rat sup_backlog;
        size_t violations = 0;
        std::vector<Violation> first_violations;
        std::string error;
    };
    try {
        if (cmd.seeds <= 0) {
            err << "sweep: --seeds must be positive\n";
            return kExitError;
        }
        SystemConfig config = load_config(cmd.config_path);
        Rat horizon = parse_rat_arg(cmd.horizon, "horizon");
        Rat intensity = parse_rat_arg(cmd.intensity, "intensity");
        BoundReport rep = compare(config);
#ifdef _OPENMP
        if (cmd.threads > 0) omp_set_num_threads(cmd.threads);
#endif
        std::vector<SeedResult> results(cmd.seeds);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cmd.seeds; ++i) {
            SeedResult& r = results[i];
            r.seed = cmd.seed_base + static_cast<uint64_t>(i);
            try {
                Trace trace = shaped_random(config, r.seed, horizon, intensity);
                Schedule sched = simulate(config, trace);
                SuiteResult sr = run_suite(config, trace, sched, rep, CheckSelect::all);
                r.packets = trace.packets.size();
                r.max_delay = sr.max_delay;
                r.sup_backlog = sr.sup_backlog;
                r.violations = sr.violations.size();
                for (size_t k = 0; k < sr.violations.size() && k < 3; ++k)
                    r.first_violations.push_back(sr.violations[k]);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }

        size_t total_violations = 0, failed_seeds = 0, errors = 0;
        Rat worst_delay(0), worst_backlog(0);
        for (const SeedResult& r : results) {
            if (!r.error.empty()) {
                ++errors;
                continue;
            }
            total_violations += r.violations;
            if (r.violations) ++failed_seeds;
            worst_delay = max(worst_delay, r.max_delay);
            worst_backlog = max(worst_backlog, r.sup_backlog);
        }

        if (cmd.json) {
            nlohmann::json seeds = nlohmann::json::array();
            for (const SeedResult& r : results) {
                nlohmann::json e{{"seed", r.seed}};
                if (!r.error.empty()) {
                    e["error"] = r.error;
                } else {
                    e["packets"] = r.packets;
                    e["max_delay"] = rat_json(r.max_delay);
                    e["sup_backlog"] = rat_json(r.sup_backlog);
                    e["violations"] = r.violations;
                }
                seeds.push_back(std::move(e));
            }
            nlohmann::json j{{"system", config.name},
                             {"seeds", seeds},
                             {"total_violations", total_violations},
                             {"worst_delay", rat_json(worst_delay)},
                             {"worst_backlog", rat_json(worst_backlog)},
                             {"pass", total_violations == 0 && errors == 0}};
            out << j.dump(2) << "\n";
        } else {
            for (const SeedResult& r : results) {
                if (!r.error.empty()) {
                    out << "seed " << r.seed << ": error: " << r.error << "\n";
                    continue;
                }
                out << "seed " << r.seed << ": " << r.packets << " packets, max delay "
                    << r.max_delay.str() << ", sup backlog " << r.sup_backlog.str()
                    << ", violations " << r.violations << "\n";
                for (const Violation& v : r.first_violations) print_violation(out, v);
            }
            out << "sweep: " << cmd.seeds << " seeds, worst delay " << worst_delay.str()
                << " s, worst backlog " << worst_backlog.str() << " bits, " << total_violations
                << " violation(s)";
            if (errors) out << ", " << errors << " seed(s) errored";
            out << "\n";
        }
        if (errors) return kExitError;
        return total_violations == 0 ? kExitPass : kExitViolations;
    } catch (const std::exception& e) {
        err << "sweep: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace mcfifo
