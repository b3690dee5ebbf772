// verify.hpp - Empirical checks of guarantees against simulated schedules.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcfifo/bounds.hpp"
#include "mcfifo/simulate.hpp"
#include "mcfifo/traffic.hpp"

namespace mcfifo {

// One failed check instance. `margin` is the remaining slack and is negative
// exactly when the check fails: bound - observed for upper bounds (delay,
// backlog, GR clocks, conformance), observed - required for service curves.
struct Violation {
    std::string check;
    long packet = -1;         // global packet index, for per-packet checks
    std::optional<Rat> time;  // event instant, for per-instant checks
    Rat observed;
    Rat bound;
    Rat margin;
};

// Cumulative view of one flow (a class, or the aggregate): distinct arrival
// and departure instants with cumulative bits through each instant.
struct FlowView {
    std::vector<Rat> arr_t;
    std::vector<Rat> arr_cum;
    std::vector<Rat> dep_t;
    std::vector<Rat> dep_cum;
};
FlowView flow_view(const Trace& trace, const Schedule& sched, std::optional<int> class_id);

// Virtual clocks of a rate-R guarantee: v_i = max(a_i, v_{i-1}) + l_i / R,
// with v_0 = 0. Packets in arrival order of the flow.
std::vector<Rat> grc_clock(const std::vector<Rat>& arrivals, const std::vector<Rat>& lengths,
                           const Rat& rate);

// Every packet of the guarantee's flow (g.class_id, or all packets when
// absent) must depart no later than its virtual clock plus g.error.
std::vector<Violation> check_gr(const Trace& trace, const Schedule& sched, const GrGuarantee& g,
                                const std::string& label);

// The flow's departures must dominate the min-plus convolution of its
// arrivals with beta, evaluated exactly at every departure instant t: the
// infimum runs over s in {0} + arrival instants + {t}, with arrivals counted
// by their left limit (bits strictly before s). For a step arrival function
// and a non-decreasing beta this candidate set attains the true infimum.
// Linear-time for rate-latency and pure-delay curves; other shapes use the
// quadratic scan over all candidates.
std::vector<Violation> check_service_curve(const FlowView& flow, const Curve& beta,
                                           const std::string& label);

// Per-packet delays against a delay bound.
std::vector<Violation> check_delay(const Schedule& sched, const Rat& bound,
                                   const std::string& label);

// Backlog supremum against a backlog bound.
std::vector<Violation> check_backlog(const Trace& trace, const Schedule& sched, const Rat& bound,
                                     const std::string& label);
// Same, over an already-computed backlog process.
std::vector<Violation> check_backlog(const StepFn& backlog, const Rat& bound,
                                     const std::string& label);

// Which family of checks to run; `all` runs every one of them.
enum class CheckSelect { all, gr, sc, delay, backlog, conformance };

// Parses "all", "gr", "sc", "delay", "backlog", or "conformance".
std::optional<CheckSelect> check_select_from_name(const std::string& name);

// Outcome of running every applicable check on one simulated trace.
struct SuiteResult {
    std::vector<std::string> checks_run;  // labels, in execution order
    std::vector<std::string> skipped;     // "label: reason" for n/a bounds
    std::vector<Violation> violations;
    Rat max_delay{0};
    Rat sup_backlog{0};
    std::optional<Rat> min_delay_margin;  // tightness: least slack under any delay bound
};

// Runs the selected checks: conformance, the aggregate GR and service curve,
// every applicable per-class GR and service curve for both methods, and the
// delay and backlog bounds for both methods. The delay/backlog summary
// figures are always filled.
SuiteResult run_suite(const SystemConfig& config, const Trace& trace, const Schedule& sched,
                      const BoundReport& report, CheckSelect which = CheckSelect::all);

}  // namespace mcfifo
