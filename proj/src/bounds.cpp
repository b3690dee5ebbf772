// bounds.cpp - Closed-form guarantees for the multiclass FIFO server.
#include "mcfifo/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace mcfifo {

namespace {

std::string pretty(const Rat& v) {
    if (v.is_integer()) return v.str();
    return v.str() + " (" + v.decimal() + ")";
}

// Sum of r_m (resp. sigma_m, sigma_m / C_m) over classes m != n.
Rat other_rate_sum(const SystemConfig& config, int n) {
    Rat s(0);
    for (const ClassSpec& c : config.classes)
        if (c.id != n) s += c.rate;
    return s;
}

Rat other_burst_sum(const SystemConfig& config, int n) {
    Rat s(0);
    for (const ClassSpec& c : config.classes)
        if (c.id != n) s += c.burst;
    return s;
}

Rat other_normalized_burst_sum(const SystemConfig& config, int n) {
    Rat s(0);
    for (const ClassSpec& c : config.classes)
        if (c.id != n) s += c.burst / c.capacity;
    return s;
}

Rat max_normalized_packet(const SystemConfig& config) {
    Rat best(0);
    for (const ClassSpec& c : config.classes) best = max(best, c.max_packet / c.capacity);
    return best;
}

std::string direct_aggregate_reason(const SystemConfig& config) {
    return "requires sum_n r_n <= C_min; sum_n r_n = " + config.total_rate().str() +
           ", C_min = " + config.c_min().str();
}

std::string improved_aggregate_reason(const Utilization& util) {
    return "requires rho <= 1; rho = " + util.rho.str();
}

std::string direct_class_reason(const SystemConfig& config, int n) {
    return "requires sum of other classes' rates < C_min; sum = " +
           other_rate_sum(config, n).str() + ", C_min = " + config.c_min().str();
}

std::string improved_class_reason(int n, const Rat& rho_bar) {
    return "requires rho_bar(" + std::to_string(n) + ") < 1; rho_bar = " + rho_bar.str();
}

bool direct_aggregate_ok(const SystemConfig& config) {
    return config.total_rate() <= config.c_min();
}

bool direct_class_ok(const SystemConfig& config, int n) {
    return other_rate_sum(config, n) < config.c_min();
}

}  // namespace

std::string method_name(Method m) {
    return m == Method::direct ? "direct" : "improved";
}

GrGuarantee aggregate_gr(const SystemConfig& config) {
    ensure_valid(config);
    return {config.c_min(), Rat(0), std::nullopt};
}

Curve aggregate_service_curve(const SystemConfig& config) {
    ensure_valid(config);
    return Curve::rate_latency(config.c_min(), config.max_packet() / config.c_min());
}

Curve gr_to_service_curve(const GrGuarantee& g, const Rat& max_packet) {
    if (!(g.rate > Rat(0)))
        throw std::invalid_argument("gr_to_service_curve: rate must be positive");
    if (max_packet < Rat(0))
        throw std::invalid_argument("gr_to_service_curve: negative packet bound");
    return Curve::rate_latency(g.rate, g.error + max_packet / g.rate);
}

BoundResult<Rat> delay_bound(const SystemConfig& config, Method method) {
    ensure_valid(config);
    if (method == Method::direct) {
        if (!direct_aggregate_ok(config)) return {std::nullopt, direct_aggregate_reason(config)};
        Rat total_burst(0);
        for (const ClassSpec& c : config.classes) total_burst += c.burst;
        return {total_burst / config.c_min(), {}};
    }
    Utilization util = utilization(config);
    if (util.rho > Rat(1)) return {std::nullopt, improved_aggregate_reason(util)};
    return {config.total_normalized_burst(), {}};
}

BoundResult<Rat> backlog_bound(const SystemConfig& config, Method method) {
    ensure_valid(config);
    if (method == Method::direct) {
        if (!direct_aggregate_ok(config)) return {std::nullopt, direct_aggregate_reason(config)};
        Rat total_burst(0);
        for (const ClassSpec& c : config.classes) total_burst += c.burst;
        return {total_burst + config.total_rate() * (config.max_packet() / config.c_min()), {}};
    }
    BoundResult<BacklogParts> parts = backlog_parts(config);
    if (!parts.applicable()) return {std::nullopt, parts.reason};
    return {min((*parts).burst_term, (*parts).capacity_term), {}};
}

BoundResult<BacklogParts> backlog_parts(const SystemConfig& config) {
    ensure_valid(config);
    Utilization util = utilization(config);
    if (util.rho > Rat(1)) return {std::nullopt, improved_aggregate_reason(util)};
    Rat total_burst(0);
    for (const ClassSpec& c : config.classes) total_burst += c.burst;
    Rat nb = config.total_normalized_burst();
    BacklogParts p;
    p.burst_term = config.total_rate() * nb + total_burst;
    p.capacity_term = config.c_max() * nb + util.rho * config.c_max() * max_normalized_packet(config);
    p.selected = p.burst_term <= p.capacity_term ? 1 : 2;
    return {p, {}};
}

BoundResult<GrGuarantee> class_gr(const SystemConfig& config, int class_id, Method method) {
    ensure_valid(config);
    config.cls(class_id);  // bounds-check the id
    if (method == Method::direct) {
        if (!direct_class_ok(config, class_id))
            return {std::nullopt, direct_class_reason(config, class_id)};
        Rat rate = config.c_min() - other_rate_sum(config, class_id);
        Rat error = (other_burst_sum(config, class_id) + config.max_packet()) / rate;
        return {GrGuarantee{rate, error, class_id}, {}};
    }
    Utilization util = utilization(config);
    Rat rho_bar = util.rho_bar[class_id - 1];
    if (!(rho_bar < Rat(1))) return {std::nullopt, improved_class_reason(class_id, rho_bar)};
    Rat one_minus = Rat(1) - rho_bar;
    Rat rate = one_minus * config.cls(class_id).capacity;
    Rat error(0);
    for (const ClassSpec& c : config.classes)
        if (c.id != class_id) error += c.burst / (one_minus * c.capacity);
    return {GrGuarantee{rate, error, class_id}, {}};
}

BoundResult<Curve> class_service_curve(const SystemConfig& config, int class_id, Method method) {
    ensure_valid(config);
    config.cls(class_id);
    if (method == Method::direct) {
        if (!direct_class_ok(config, class_id))
            return {std::nullopt, direct_class_reason(config, class_id)};
        Rat rate = config.c_min() - other_rate_sum(config, class_id);
        Rat latency = (config.max_packet() + other_burst_sum(config, class_id)) / rate;
        return {Curve::rate_latency(rate, latency), {}};
    }
    Utilization util = utilization(config);
    Rat rho_bar = util.rho_bar[class_id - 1];
    if (!(rho_bar < Rat(1))) return {std::nullopt, improved_class_reason(class_id, rho_bar)};
    const ClassSpec& c = config.cls(class_id);
    Rat rate = (Rat(1) - rho_bar) * c.capacity;
    Rat latency = (c.max_packet + c.capacity * other_normalized_burst_sum(config, class_id)) / rate;
    return {Curve::rate_latency(rate, latency), {}};
}

BoundReport compare(const SystemConfig& config) {
    ensure_valid(config);
    BoundReport rep;
    rep.system = config.name;
    rep.util = utilization(config);
    rep.total_rate = config.total_rate();
    rep.aggregate = aggregate_gr(config);
    rep.aggregate_sc = aggregate_service_curve(config);
    rep.parts = backlog_parts(config);

    for (Method m : {Method::direct, Method::improved}) {
        MethodBounds mb;
        mb.method = m;
        mb.delay = delay_bound(config, m);
        mb.backlog = backlog_bound(config, m);
        for (int n = 1; n <= config.size(); ++n) {
            mb.class_gr.push_back(class_gr(config, n, m));
            mb.class_sc.push_back(class_service_curve(config, n, m));
        }
        (m == Method::direct ? rep.direct : rep.improved) = std::move(mb);
    }

    for (int n = 1; n <= config.size(); ++n) {
        ClassComparison cc;
        cc.class_id = n;
        const auto& dg = rep.direct.class_gr[n - 1];
        const auto& ig = rep.improved.class_gr[n - 1];
        if (dg.applicable() && ig.applicable()) {
            cc.improved_rate_ge = (*ig).rate >= (*dg).rate;
            cc.improved_error_le = (*ig).error <= (*dg).error;
        }
        const auto& ds = rep.direct.class_sc[n - 1];
        const auto& is = rep.improved.class_sc[n - 1];
        if (ds.applicable() && is.applicable())
            cc.improved_sc_dominates = dominates(*is, *ds);
        rep.comparison.push_back(cc);
    }
    return rep;
}

std::string report_to_text(const BoundReport& rep, std::optional<Method> only) {
    const bool show_direct = !only || *only == Method::direct;
    const bool show_improved = !only || *only == Method::improved;
    std::ostringstream os;
    os << "system: " << rep.system << "\n";
    os << "utilization rho = " << pretty(rep.util.rho) << ", total rate = "
       << rep.total_rate.str() << "\n";
    os << "aggregate: GR rate " << rep.aggregate.rate.str() << ", error "
       << rep.aggregate.error.str() << "; service curve " << rep.aggregate_sc.str() << "\n";

    auto bound_line = [&](const char* label, const BoundResult<Rat>& d,
                          const BoundResult<Rat>& i) {
        os << label << "\n";
        if (show_direct)
            os << "  direct    " << (d.applicable() ? pretty(*d) : "n/a: " + d.reason) << "\n";
        if (show_improved) {
            os << "  improved  " << (i.applicable() ? pretty(*i) : "n/a: " + i.reason);
            if (i.applicable() && rep.parts.applicable() && label[0] == 'b') {
                const BacklogParts& p = *rep.parts;
                os << "  [min of burst term " << p.burst_term.str() << ", capacity term "
                   << p.capacity_term.str() << "]";
            }
            os << "\n";
        }
    };
    bound_line("delay bound (s):", rep.direct.delay, rep.improved.delay);
    bound_line("backlog bound (bits):", rep.direct.backlog, rep.improved.backlog);

    for (size_t k = 0; k < rep.comparison.size(); ++k) {
        int n = rep.comparison[k].class_id;
        os << "class " << n << ":\n";
        auto gr_line = [&](const char* tag, const BoundResult<GrGuarantee>& g) {
            os << "  GR " << tag << "  ";
            if (g.applicable())
                os << "rate " << (*g).rate.str() << ", error " << pretty((*g).error);
            else
                os << "n/a: " << g.reason;
            os << "\n";
        };
        auto sc_line = [&](const char* tag, const BoundResult<Curve>& s) {
            os << "  SC " << tag << "  ";
            if (s.applicable())
                os << (*s).str();
            else
                os << "n/a: " << s.reason;
            os << "\n";
        };
        if (show_direct) {
            gr_line("direct  ", rep.direct.class_gr[k]);
            sc_line("direct  ", rep.direct.class_sc[k]);
        }
        if (show_improved) {
            gr_line("improved", rep.improved.class_gr[k]);
            sc_line("improved", rep.improved.class_sc[k]);
        }
        const ClassComparison& cc = rep.comparison[k];
        if (show_direct && show_improved &&
            (cc.improved_rate_ge || cc.improved_error_le || cc.improved_sc_dominates)) {
            os << "  comparison:";
            if (cc.improved_rate_ge)
                os << " improved rate >= direct: " << (*cc.improved_rate_ge ? "yes" : "no") << ";";
            if (cc.improved_error_le)
                os << " improved error <= direct: " << (*cc.improved_error_le ? "yes" : "no")
                   << ";";
            if (cc.improved_sc_dominates)
                os << " improved curve dominates direct: "
                   << (*cc.improved_sc_dominates ? "yes" : "no");
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace mcfifo
