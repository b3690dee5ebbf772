// reference.hpp - Serial, definitional checkers used to validate the kernels.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcfifo/traffic.hpp"
#include "mcfifo/verify.hpp"

// Straight transcriptions of the definitions, quadratic in the event count
// and with no shape-special-casing or parallelism. The fast kernels must
// agree with these exactly; tests and the benchmark tool compare them.
namespace mcfifo::reference {

// Every window pair (s, t) of each class checked literally.
std::optional<ConformanceViolation> conformance_check(const SystemConfig& config,
                                                      const Trace& trace);

// Every departure instant against the infimum over every candidate.
std::vector<Violation> check_service_curve(const FlowView& flow, const Curve& beta,
                                           const std::string& label);

// Backlog supremum by re-counting arrived and departed bits at every event.
Rat backlog_sup(const Trace& trace, const Schedule& sched);

}  // namespace mcfifo::reference
