// bounds.hpp - Closed-form delay/backlog/rate/service-curve guarantees.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcfifo/curve.hpp"
#include "mcfifo/system.hpp"

namespace mcfifo {

// Two families of guarantees for the same system:
//  - direct:   treats the server as one aggregate at rate C_min, so every
//    condition and bound is expressed against the slowest class rate;
//  - improved: works in normalized (service-time) units, replacing the
//    C_min conditions with the utilization rho = sum_n r_n / C_n.
enum class Method { direct, improved };

std::string method_name(Method m);

// Guaranteed-rate parameters: every packet departs no later than its rate-R
// virtual clock plus the error term.
struct GrGuarantee {
    Rat rate;
    Rat error;
    std::optional<int> class_id;  // nullopt: the aggregate flow
};

// A bound together with its applicability. When the precondition fails the
// value is absent and `reason` names the condition with the offending
// numbers substituted in.
template <class T>
struct BoundResult {
    std::optional<T> value;
    std::string reason;

    bool applicable() const { return value.has_value(); }
    const T& operator*() const { return *value; }
};

BoundResult<Rat> delay_bound(const SystemConfig& config, Method method);
BoundResult<Rat> backlog_bound(const SystemConfig& config, Method method);
BoundResult<GrGuarantee> class_gr(const SystemConfig& config, int class_id, Method method);
BoundResult<Curve> class_service_curve(const SystemConfig& config, int class_id, Method method);

// The aggregate guarantees hold unconditionally for a work-conserving server.
GrGuarantee aggregate_gr(const SystemConfig& config);
Curve aggregate_service_curve(const SystemConfig& config);

// A rate-R guarantee with error E serves at least a rate-latency curve with
// latency E + L / R, where L bounds the packet lengths the guarantee covers.
Curve gr_to_service_curve(const GrGuarantee& g, const Rat& max_packet);

// The two terms whose minimum is the improved backlog bound, kept for
// reporting which one was selected.
struct BacklogParts {
    Rat burst_term;      // (sum_n r_n) * (sum_n sigma_n / C_n) + sum_n sigma_n
    Rat capacity_term;   // C_max * (sum_n sigma_n / C_n) + rho * C_max * max_n (L_n / C_n)
    int selected;        // 1 or 2: which term is the minimum (1 on ties)
};
BoundResult<BacklogParts> backlog_parts(const SystemConfig& config);

// Everything the toolkit can say about one system, both methods side by side.
struct MethodBounds {
    Method method;
    BoundResult<Rat> delay;
    BoundResult<Rat> backlog;
    std::vector<BoundResult<GrGuarantee>> class_gr;  // index n-1 for class n
    std::vector<BoundResult<Curve>> class_sc;
};

struct ClassComparison {
    int class_id;
    // Set only when both methods apply to this class.
    std::optional<bool> improved_rate_ge;    // improved GR rate >= direct GR rate
    std::optional<bool> improved_error_le;   // improved GR error <= direct GR error
    std::optional<bool> improved_sc_dominates;  // improved curve >= direct curve everywhere
};

struct BoundReport {
    std::string system;
    Utilization util;
    Rat total_rate;
    GrGuarantee aggregate;
    Curve aggregate_sc = Curve::zero();
    MethodBounds direct;
    MethodBounds improved;
    BoundResult<BacklogParts> parts;  // improved backlog decomposition
    std::vector<ClassComparison> comparison;
};

BoundReport compare(const SystemConfig& config);

// Human-readable rendering of a report; `only` restricts it to one method.
std::string report_to_text(const BoundReport& report, std::optional<Method> only = std::nullopt);

}  // namespace mcfifo
