// cli.hpp - Command implementations behind the mcfifo tool.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mcfifo {

// Exit codes shared by all commands: 0 success (and all checks passed),
// 1 checks failed, 2 bad arguments / unreadable inputs.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitError = 2;

struct BoundsCmd {
    std::string config_path;
    std::string method = "both";  // direct | improved | both
    bool json = false;
};

struct GenerateCmd {
    std::string config_path;
    std::string mode = "random";  // random | greedy
    int tagged = 1;               // greedy: class whose last packet goes final
    uint64_t seed = 1;            // random
    std::string horizon = "1";    // random: seconds of candidate arrivals
    std::string intensity = "9/10";  // random: offered fraction of each rate
    std::string out;              // trace path; empty writes to stdout
};

struct SimulateCmd {
    std::string config_path;
    std::string trace_path;
    std::string out;          // schedule path; empty writes to stdout
    std::string backlog_out;  // optional backlog step-function path
};

struct VerifyCmd {
    std::string config_path;
    std::string trace_path;
    std::string checks = "all";  // all | gr | sc | delay | backlog | conformance
    bool json = false;
    int max_print = 10;  // violations detailed in text output
};

struct SweepCmd {
    std::string config_path;
    int seeds = 100;
    uint64_t seed_base = 1;
    std::string horizon = "1";
    std::string intensity = "9/10";
    bool json = false;
    int threads = 0;  // OpenMP threads for the seed loop; 0 = default
};

int cmd_bounds(const BoundsCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepCmd& cmd, std::ostream& out, std::ostream& err);

}  // namespace mcfifo
