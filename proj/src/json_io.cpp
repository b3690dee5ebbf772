// json_io.cpp - JSON forms of configs, reports, and check results.
#include "mcfifo/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mcfifo {

using nlohmann::json;

json rat_json(const Rat& v) {
    return json{{"exact", v.str()}, {"approx", v.to_double()}};
}

json curve_json(const Curve& c) {
    json pts = json::array();
    for (const CurvePoint& p : c.points())
        pts.push_back(json{{"t", rat_json(p.t)}, {"v", rat_json(p.v)}, {"slope", rat_json(p.slope)}});
    json out{{"points", pts}};
    out["inf_from"] = c.has_tail() ? rat_json(*c.inf_from()) : json(nullptr);
    return out;
}

json config_json(const SystemConfig& c) {
    json classes = json::array();
    for (const ClassSpec& cs : c.classes)
        classes.push_back(json{{"id", cs.id},
                               {"capacity", cs.capacity.str()},
                               {"rate", cs.rate.str()},
                               {"burst", cs.burst.str()},
                               {"max_packet", cs.max_packet.str()}});
    return json{{"name", c.name}, {"classes", classes}};
}

namespace {

Rat rat_field(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw std::runtime_error(where + ": missing field '" + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) {
        auto r = Rat::parse_quantity(v.get<std::string>());
        if (!r)
            throw std::runtime_error(where + ": cannot parse " + key + " value '" +
                                     v.get<std::string>() + "'");
        return *r;
    }
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    throw std::runtime_error(where + ": " + key +
                             " must be an integer or a string like \"3/2\", \"0.75\", \"12k\"");
}

}  // namespace

SystemConfig config_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("config: top level must be an object");
    SystemConfig c;
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (!j.contains("classes") || !j.at("classes").is_array() || j.at("classes").empty())
        throw std::runtime_error("config: needs a non-empty 'classes' array");
    int n = 0;
    for (const json& jc : j.at("classes")) {
        ++n;
        std::string where = "config class " + std::to_string(n);
        if (!jc.is_object()) throw std::runtime_error(where + ": must be an object");
        if (jc.contains("id") && jc.at("id").get<int>() != n)
            throw std::runtime_error(where + ": id must be " + std::to_string(n) +
                                     " (ids are positional)");
        ClassSpec cs;
        cs.id = n;
        cs.capacity = rat_field(jc, "capacity", where);
        cs.rate = rat_field(jc, "rate", where);
        cs.burst = rat_field(jc, "burst", where);
        cs.max_packet = rat_field(jc, "max_packet", where);
        c.classes.push_back(std::move(cs));
    }
    ensure_valid(c);
    return c;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    SystemConfig c = config_from_json(j);
    if (c.name.empty()) c.name = std::filesystem::path(path).stem().string();
    return c;
}

namespace {

template <class T, class Fn>
json bound_result_json(const BoundResult<T>& r, Fn&& serialize) {
    if (!r.applicable()) return json{{"na", r.reason}};
    return json{{"value", serialize(*r)}};
}

json gr_json(const GrGuarantee& g) {
    json out{{"rate", rat_json(g.rate)}, {"error", rat_json(g.error)}};
    out["class"] = g.class_id ? json(*g.class_id) : json(nullptr);
    return out;
}

json method_json(const MethodBounds& mb) {
    json classes = json::array();
    for (size_t k = 0; k < mb.class_gr.size(); ++k) {
        classes.push_back(
            json{{"id", static_cast<int>(k) + 1},
                 {"gr", bound_result_json(mb.class_gr[k], gr_json)},
                 {"service_curve", bound_result_json(mb.class_sc[k], curve_json)}});
    }
    return json{{"delay", bound_result_json(mb.delay, rat_json)},
                {"backlog", bound_result_json(mb.backlog, rat_json)},
                {"classes", classes}};
}

}  // namespace

json report_json(const BoundReport& r) {
    json out{{"system", r.system},
             {"rho", rat_json(r.util.rho)},
             {"total_rate", rat_json(r.total_rate)},
             {"aggregate",
              json{{"gr", gr_json(r.aggregate)}, {"service_curve", curve_json(r.aggregate_sc)}}},
             {"direct", method_json(r.direct)},
             {"improved", method_json(r.improved)}};
    out["improved"]["backlog_parts"] = bound_result_json(r.parts, [](const BacklogParts& p) {
        return json{{"burst_term", rat_json(p.burst_term)},
                    {"capacity_term", rat_json(p.capacity_term)},
                    {"selected", p.selected}};
    });
    json cmp = json::array();
    for (const ClassComparison& cc : r.comparison) {
        json e{{"class", cc.class_id}};
        e["improved_rate_ge"] = cc.improved_rate_ge ? json(*cc.improved_rate_ge) : json(nullptr);
        e["improved_error_le"] = cc.improved_error_le ? json(*cc.improved_error_le) : json(nullptr);
        e["improved_sc_dominates"] =
            cc.improved_sc_dominates ? json(*cc.improved_sc_dominates) : json(nullptr);
        cmp.push_back(std::move(e));
    }
    out["comparison"] = cmp;
    return out;
}

json violation_json(const Violation& v) {
    json out{{"check", v.check},
             {"observed", rat_json(v.observed)},
             {"bound", rat_json(v.bound)},
             {"margin", rat_json(v.margin)}};
    out["packet"] = v.packet >= 0 ? json(v.packet) : json(nullptr);
    out["time"] = v.time ? rat_json(*v.time) : json(nullptr);
    return out;
}

json suite_json(const SuiteResult& r) {
    json viols = json::array();
    for (const Violation& v : r.violations) viols.push_back(violation_json(v));
    json out{{"checks_run", r.checks_run},
             {"skipped", r.skipped},
             {"violations", viols},
             {"max_delay", rat_json(r.max_delay)},
             {"sup_backlog", rat_json(r.sup_backlog)},
             {"pass", r.violations.empty()}};
    out["min_delay_margin"] = r.min_delay_margin ? rat_json(*r.min_delay_margin) : json(nullptr);
    return out;
}

}  // namespace mcfifo
