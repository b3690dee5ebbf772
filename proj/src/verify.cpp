// verify.cpp - Guarantee checkers over simulated schedules.
#include "mcfifo/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcfifo {

namespace {

// Bits of the flow arriving strictly before t.
Rat cum_before(const std::vector<Rat>& ts, const std::vector<Rat>& cum, const Rat& t) {
    size_t idx = std::lower_bound(ts.begin(), ts.end(), t) - ts.begin();
    return idx == 0 ? Rat(0) : cum[idx - 1];
}

// Raw-mpq variants used in the hot loops; they reuse the caller's scratch
// storage instead of allocating temporaries. `out` is only assigned to.
const mpq_class& raw_cum_before(const FlowView& f, const mpq_class& t, const mpq_class& zero) {
    size_t lo = 0, hi = f.arr_t.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cmp(f.arr_t[mid].raw(), t) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo == 0 ? zero : f.arr_cum[lo - 1].raw();
}

// First arrival index with arr_t >= x.
size_t lower_idx(const FlowView& f, const mpq_class& x) {
    size_t lo = 0, hi = f.arr_t.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cmp(f.arr_t[mid].raw(), x) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

// Bits strictly before arrival instant k.
const Rat& abar_of(const FlowView& f, size_t k, const Rat& zero) {
    return k == 0 ? zero : f.arr_cum[k - 1];
}

struct RateLatency {
    Rat rate;
    Rat latency;
};

std::optional<RateLatency> as_rate_latency(const Curve& beta) {
    if (beta.has_tail()) return std::nullopt;
    const auto& pts = beta.points();
    if (!pts.front().v.is_zero()) return std::nullopt;
    if (pts.size() == 1) {
        if (pts[0].slope.is_zero()) return std::nullopt;
        return RateLatency{pts[0].slope, Rat(0)};
    }
    if (pts.size() == 2 && pts[0].slope.is_zero() && pts[1].v.is_zero() && !pts[1].slope.is_zero())
        return RateLatency{pts[1].slope, pts[1].t};
    return std::nullopt;
}

// Definitional infimum at one departure instant; exact for any curve shape.
Rat exact_rhs(const FlowView& f, const Curve& beta, const Rat& t) {
    const Rat zero(0);
    Rat rhs = cum_before(f.arr_t, f.arr_cum, t) + beta.eval(Rat(0)).finite();
    auto consider = [&](const Rat& s, const Rat& abar) {
        if (s > t) return;
        ExtRat b = beta.eval(t - s);
        if (b.is_infinite()) return;
        rhs = min(rhs, abar + b.finite());
    };
    consider(zero, zero);
    for (size_t k = 0; k < f.arr_t.size(); ++k) consider(f.arr_t[k], abar_of(f, k, zero));
    return rhs;
}

}  // namespace

FlowView flow_view(const Trace& trace, const Schedule& sched, std::optional<int> class_id) {
    if (trace.packets.size() != sched.departure.size())
        throw std::invalid_argument("flow_view: schedule does not match trace");
    FlowView f;
    Rat acum(0);
    for (size_t i = 0; i < trace.packets.size(); ++i) {
        const Packet& p = trace.packets[i];
        if (class_id && p.class_id != *class_id) continue;
        if (!f.arr_t.empty() && p.arrival < f.arr_t.back())
            throw std::invalid_argument("flow_view: arrivals out of order");
        acum += p.length;
        if (!f.arr_t.empty() && f.arr_t.back() == p.arrival)
            f.arr_cum.back() = acum;
        else {
            f.arr_t.push_back(p.arrival);
            f.arr_cum.push_back(acum);
        }
    }
    Rat dcum(0);
    for (size_t i = 0; i < trace.packets.size(); ++i) {
        if (class_id && trace.packets[i].class_id != *class_id) continue;
        const Rat& d = sched.departure[i];
        if (!f.dep_t.empty() && d < f.dep_t.back())
            throw std::invalid_argument("flow_view: departures out of order");
        dcum += trace.packets[i].length;
        if (!f.dep_t.empty() && f.dep_t.back() == d)
            f.dep_cum.back() = dcum;
        else {
            f.dep_t.push_back(d);
            f.dep_cum.push_back(dcum);
        }
    }
    return f;
}

std::vector<Rat> grc_clock(const std::vector<Rat>& arrivals, const std::vector<Rat>& lengths,
                           const Rat& rate) {
    if (arrivals.size() != lengths.size())
        throw std::invalid_argument("grc_clock: arrivals/lengths size mismatch");
    if (!(rate > Rat(0))) throw std::invalid_argument("grc_clock: rate must be positive");
    std::vector<Rat> clocks;
    clocks.reserve(arrivals.size());
    const mpq_class inv = (Rat(1) / rate).raw();
    mpq_class work(0), serv;
    for (size_t i = 0; i < arrivals.size(); ++i) {
        if (cmp(arrivals[i].raw(), work) > 0) work = arrivals[i].raw();
        serv = lengths[i].raw() * inv;
        work += serv;
        clocks.push_back(Rat(mpq_class(work)));
    }
    return clocks;
}

std::vector<Violation> check_gr(const Trace& trace, const Schedule& sched, const GrGuarantee& g,
                                const std::string& label) {
    if (trace.packets.size() != sched.departure.size())
        throw std::invalid_argument("check_gr: schedule does not match trace");
    if (!(g.rate > Rat(0))) throw std::invalid_argument("check_gr: rate must be positive");

    // Virtual-clock recursion fused with the deadline comparison; the
    // recursion is inherently sequential, so this runs serial.
    const mpq_class inv = (Rat(1) / g.rate).raw();
    const mpq_class& err = g.error.raw();
    mpq_class work(0), serv, deadline;
    std::vector<Violation> out;
    for (size_t i = 0; i < trace.packets.size(); ++i) {
        const Packet& p = trace.packets[i];
        if (g.class_id && p.class_id != *g.class_id) continue;
        if (cmp(p.arrival.raw(), work) > 0) work = p.arrival.raw();
        serv = p.length.raw() * inv;
        work += serv;
        deadline = work + err;
        if (cmp(sched.departure[i].raw(), deadline) > 0) {
            Rat b{mpq_class(deadline)};
            out.push_back({label, static_cast<long>(i), std::nullopt, sched.departure[i], b,
                           b - sched.departure[i]});
        }
    }
    return out;
}

std::vector<Violation> check_service_curve(const FlowView& f, const Curve& beta,
                                           const std::string& label) {
    std::vector<Violation> out;
    if (beta.is_zero() || f.dep_t.empty()) return out;
    const long nd = static_cast<long>(f.dep_t.size());
    const size_t na = f.arr_t.size();
    std::vector<char> bad(nd, 0);
    const mpq_class zero(0);
    const Rat rzero(0);

    auto rl = as_rate_latency(beta);
    const bool impulse = beta.finite_part_is_zero() && beta.has_tail();
    if (rl) {
        // Sweep with prefix minima of abar(s) - rate * s over the arrival
        // instants; the virtual candidate s = 0 contributes key 0, which the
        // prefix minimum already dominates. For each departure t the infimum
        // splits into the candidates before t - latency (linear part of
        // beta), the first candidate at or after it (flat part), and s = t.
        const mpq_class& rate = rl->rate.raw();
        const mpq_class& lat = rl->latency.raw();
        std::vector<mpq_class> prefmin(na);
        {
            mpq_class key;
            for (size_t i = 0; i < na; ++i) {
                key = rate * f.arr_t[i].raw();
                key = abar_of(f, i, rzero).raw() - key;
                if (i == 0 || cmp(key, prefmin[i - 1]) < 0)
                    prefmin[i] = key;
                else
                    prefmin[i] = prefmin[i - 1];
            }
        }
#pragma omp parallel
        {
            mpq_class x, lin, best;
#pragma omp for schedule(static)
            for (long j = 0; j < nd; ++j) {
                x = f.dep_t[j].raw() - lat;
                if (sgn(x) <= 0) continue;  // rhs would be 0
                size_t idx = lower_idx(f, x);
                lin = rate * x;
                if (idx > 0 && sgn(prefmin[idx - 1]) < 0) lin += prefmin[idx - 1];
                best = raw_cum_before(f, f.dep_t[j].raw(), zero);  // s = t
                if (idx < na && cmp(abar_of(f, idx, rzero).raw(), best) < 0)
                    best = abar_of(f, idx, rzero).raw();
                if (cmp(lin, best) < 0) best = lin;
                bad[j] = cmp(f.dep_cum[j].raw(), best) < 0 ? 1 : 0;
            }
        }
    } else if (impulse) {
        const mpq_class& dly = beta.inf_from()->raw();
#pragma omp parallel
        {
            mpq_class x, best;
#pragma omp for schedule(static)
            for (long j = 0; j < nd; ++j) {
                x = f.dep_t[j].raw() - dly;
                if (sgn(x) <= 0) continue;  // s = 0 is admissible, rhs = 0
                size_t idx = lower_idx(f, x);
                best = raw_cum_before(f, f.dep_t[j].raw(), zero);
                if (idx < na && cmp(abar_of(f, idx, rzero).raw(), best) < 0)
                    best = abar_of(f, idx, rzero).raw();
                bad[j] = cmp(f.dep_cum[j].raw(), best) < 0 ? 1 : 0;
            }
        }
    } else {
#pragma omp parallel for schedule(static)
        for (long j = 0; j < nd; ++j)
            bad[j] = f.dep_cum[j] < exact_rhs(f, beta, f.dep_t[j]) ? 1 : 0;
    }

    for (long j = 0; j < nd; ++j) {
        if (!bad[j]) continue;
        Rat rhs = exact_rhs(f, beta, f.dep_t[j]);
        out.push_back({label, -1, f.dep_t[j], f.dep_cum[j], rhs, f.dep_cum[j] - rhs});
    }
    return out;
}

std::vector<Violation> check_delay(const Schedule& sched, const Rat& bound,
                                   const std::string& label) {
    const long n = static_cast<long>(sched.delay.size());
    std::vector<char> bad(n, 0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) bad[i] = sched.delay[i] > bound ? 1 : 0;

    std::vector<Violation> out;
    for (long i = 0; i < n; ++i) {
        if (!bad[i]) continue;
        out.push_back({label, i, std::nullopt, sched.delay[i], bound, bound - sched.delay[i]});
    }
    return out;
}

std::vector<Violation> check_backlog(const StepFn& backlog, const Rat& bound,
                                     const std::string& label) {
    std::vector<Violation> out;
    if (backlog.sup > bound) {
        Rat at(0);
        for (const auto& [t, v] : backlog.steps) {
            if (v == backlog.sup) {
                at = t;
                break;
            }
        }
        out.push_back({label, -1, at, backlog.sup, bound, bound - backlog.sup});
    }
    return out;
}

std::vector<Violation> check_backlog(const Trace& trace, const Schedule& sched, const Rat& bound,
                                     const std::string& label) {
    return check_backlog(backlog_process(trace, sched), bound, label);
}

std::optional<CheckSelect> check_select_from_name(const std::string& name) {
    if (name == "all") return CheckSelect::all;
    if (name == "gr") return CheckSelect::gr;
    if (name == "sc") return CheckSelect::sc;
    if (name == "delay") return CheckSelect::delay;
    if (name == "backlog") return CheckSelect::backlog;
    if (name == "conformance") return CheckSelect::conformance;
    return std::nullopt;
}

SuiteResult run_suite(const SystemConfig& config, const Trace& trace, const Schedule& sched,
                      const BoundReport& report, CheckSelect which) {
    SuiteResult res;
    auto want = [&](CheckSelect s) { return which == CheckSelect::all || which == s; };
    auto run = [&](const std::string& label, std::vector<Violation> v) {
        res.checks_run.push_back(label);
        for (auto& x : v) res.violations.push_back(std::move(x));
    };
    auto skip = [&](const std::string& label, const std::string& reason) {
        res.skipped.push_back(label + ": " + reason);
    };

    if (want(CheckSelect::conformance)) {
        res.checks_run.push_back("conformance");
        if (auto cv = conformance_check(config, trace)) {
            Violation v;
            v.check = "conformance(class " + std::to_string(cv->class_id) + ")";
            v.time = cv->window_end;
            v.observed = cv->observed_bits;
            v.bound = cv->allowed_bits;
            v.margin = v.bound - v.observed;
            res.violations.push_back(std::move(v));
        }
    }

    if (want(CheckSelect::gr))
        run("gr(aggregate)", check_gr(trace, sched, report.aggregate, "gr(aggregate)"));
    if (want(CheckSelect::sc)) {
        FlowView agg = flow_view(trace, sched, std::nullopt);
        run("service-curve(aggregate)",
            check_service_curve(agg, report.aggregate_sc, "service-curve(aggregate)"));
    }

    for (int n = 1; n <= config.size(); ++n) {
        if (!want(CheckSelect::gr) && !want(CheckSelect::sc)) break;
        std::optional<FlowView> fv;
        if (want(CheckSelect::sc)) fv = flow_view(trace, sched, n);
        for (Method m : {Method::direct, Method::improved}) {
            const MethodBounds& mb = m == Method::direct ? report.direct : report.improved;
            std::string suffix = "(class " + std::to_string(n) + ", " + method_name(m) + ")";
            const auto& gr = mb.class_gr[n - 1];
            if (want(CheckSelect::gr)) {
                if (gr.applicable())
                    run("gr" + suffix, check_gr(trace, sched, *gr, "gr" + suffix));
                else
                    skip("gr" + suffix, gr.reason);
            }
            const auto& sc = mb.class_sc[n - 1];
            if (want(CheckSelect::sc)) {
                if (sc.applicable())
                    run("service-curve" + suffix,
                        check_service_curve(*fv, *sc, "service-curve" + suffix));
                else
                    skip("service-curve" + suffix, sc.reason);
            }
        }
    }

    for (const Rat& d : sched.delay) res.max_delay = max(res.max_delay, d);
    StepFn backlog = backlog_process(trace, sched);
    res.sup_backlog = backlog.sup;

    for (Method m : {Method::direct, Method::improved}) {
        const MethodBounds& mb = m == Method::direct ? report.direct : report.improved;
        std::string suffix = "(" + method_name(m) + ")";
        if (want(CheckSelect::delay)) {
            if (mb.delay.applicable()) {
                run("delay" + suffix, check_delay(sched, *mb.delay, "delay" + suffix));
                Rat margin = *mb.delay - res.max_delay;
                if (!res.min_delay_margin || margin < *res.min_delay_margin)
                    res.min_delay_margin = margin;
            } else {
                skip("delay" + suffix, mb.delay.reason);
            }
        }
        if (want(CheckSelect::backlog)) {
            if (mb.backlog.applicable())
                run("backlog" + suffix, check_backlog(backlog, *mb.backlog, "backlog" + suffix));
            else
                skip("backlog" + suffix, mb.backlog.reason);
        }
    }
    return res;
}

}  // namespace mcfifo
