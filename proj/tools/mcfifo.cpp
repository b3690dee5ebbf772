// mcfifo.cpp - Command-line front end.
#include <CLI11.hpp>

#include <iostream>

#include "mcfifo/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Delay, backlog, and service guarantees for a multiclass FIFO server"};
    app.require_subcommand(1);

    mcfifo::BoundsCmd bounds;
    CLI::App* b = app.add_subcommand("bounds", "Compute guarantees for a system config");
    b->add_option("--config", bounds.config_path, "system config (JSON)")->required();
    b->add_option("--method", bounds.method, "direct, improved, or both (default: both)");
    b->add_flag("--json", bounds.json, "machine-readable output (always both methods)");

    mcfifo::GenerateCmd gen;
    CLI::App* g = app.add_subcommand("generate", "Generate a conformant packet trace");
    g->add_option("--config", gen.config_path, "system config (JSON)")->required();
    g->add_option("--mode", gen.mode, "random or greedy (default: random)");
    g->add_option("--seed", gen.seed, "random: generator seed (default: 1)");
    g->add_option("--horizon", gen.horizon,
                  "random: candidate-arrival horizon in seconds (default: 1)");
    g->add_option("--intensity", gen.intensity,
                  "random: offered fraction of each class rate, in [0,1] (default: 9/10)");
    g->add_option("--tagged", gen.tagged, "greedy: class whose last packet departs last");
    g->add_option("--out", gen.out, "trace file (default: stdout)");

    mcfifo::SimulateCmd sim;
    CLI::App* s = app.add_subcommand("simulate", "Run a trace through the FIFO server");
    s->add_option("--config", sim.config_path, "system config (JSON)")->required();
    s->add_option("--trace", sim.trace_path, "packet trace")->required();
    s->add_option("--out", sim.out, "schedule file (default: stdout)");
    s->add_option("--backlog-out", sim.backlog_out, "also write the backlog step function");

    mcfifo::VerifyCmd ver;
    CLI::App* v = app.add_subcommand("verify", "Check every applicable guarantee on a trace");
    v->add_option("--config", ver.config_path, "system config (JSON)")->required();
    v->add_option("--trace", ver.trace_path, "packet trace")->required();
    v->add_option("--checks", ver.checks, "which checks to run: all, gr, sc, delay, backlog, conformance")
        ->check(CLI::IsMember({"all", "gr", "sc", "delay", "backlog", "conformance"}));
    v->add_flag("--json", ver.json, "machine-readable output");
    v->add_option("--max-print", ver.max_print, "violations detailed in text output");

    mcfifo::SweepCmd sweep;
    CLI::App* w = app.add_subcommand("sweep", "Generate, simulate, and verify many seeds");
    w->add_option("--config", sweep.config_path, "system config (JSON)")->required();
    w->add_option("--seeds", sweep.seeds, "number of seeds (default: 100)");
    w->add_option("--seed-base", sweep.seed_base, "first seed (default: 1)");
    w->add_option("--horizon", sweep.horizon, "candidate-arrival horizon in seconds");
    w->add_option("--intensity", sweep.intensity, "offered fraction of each class rate");
    w->add_flag("--json", sweep.json, "machine-readable output");
    w->add_option("--threads", sweep.threads, "threads for the seed loop (default: library)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Fold CLI11's assorted parse-error codes into the documented
        // bad-arguments code; --help and --version still exit 0.
        return app.exit(e) == 0 ? mcfifo::kExitPass : mcfifo::kExitError;
    }

    if (b->parsed()) return mcfifo::cmd_bounds(bounds, std::cout, std::cerr);
    if (g->parsed()) return mcfifo::cmd_generate(gen, std::cout, std::cerr);
    if (s->parsed()) return mcfifo::cmd_simulate(sim, std::cout, std::cerr);
    if (v->parsed()) return mcfifo::cmd_verify(ver, std::cout, std::cerr);
    if (w->parsed()) return mcfifo::cmd_sweep(sweep, std::cout, std::cerr);
    return mcfifo::kExitError;
}
