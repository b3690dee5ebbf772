// json_io.hpp - JSON forms of configs, reports, and check results.
#pragma once

#include <json.hpp>

#include <string>

#include "mcfifo/bounds.hpp"
#include "mcfifo/verify.hpp"

namespace mcfifo {

// Exact value plus a double approximation for quick reading.
nlohmann::json rat_json(const Rat& v);
nlohmann::json curve_json(const Curve& c);

nlohmann::json config_json(const SystemConfig& c);
// Accepts integers or strings ("3/2", "0.75", "12k", "1M") for the numeric
// fields; rejects JSON floats, which would be inexact.
SystemConfig config_from_json(const nlohmann::json& j);
// Reads a config file; an empty/missing name defaults to the file stem.
SystemConfig load_config(const std::string& path);

nlohmann::json report_json(const BoundReport& r);
nlohmann::json violation_json(const Violation& v);
nlohmann::json suite_json(const SuiteResult& r);

}  // namespace mcfifo
