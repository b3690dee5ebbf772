// reference.cpp - Serial definitional checkers.
#include "mcfifo/reference.hpp"

namespace mcfifo::reference {

std::optional<ConformanceViolation> conformance_check(const SystemConfig& config,
                                                      const Trace& trace) {
    ensure_valid(config);
    ensure_valid_trace(config, trace);

    std::optional<ConformanceViolation> best;
    for (const ClassSpec& c : config.classes) {
        std::vector<Rat> et, bits;
        for (const Packet& p : trace.packets) {
            if (p.class_id != c.id) continue;
            if (!et.empty() && p.arrival == et.back())
                bits.back() += p.length;
            else {
                et.push_back(p.arrival);
                bits.push_back(p.length);
            }
        }
        std::vector<Rat> prefix;  // bits through e_k
        Rat acc(0);
        for (const Rat& b : bits) {
            acc += b;
            prefix.push_back(acc);
        }

        bool done = false;
        for (size_t k = 0; k < et.size() && !done; ++k) {
            for (size_t i = 0; i <= k; ++i) {
                Rat window = prefix[k] - (i == 0 ? Rat(0) : prefix[i - 1]);
                Rat allowed = c.rate * (et[k] - et[i]) + c.burst;
                if (window > allowed) {
                    ConformanceViolation v{c.id, et[i], et[k], window, allowed};
                    if (!best || v.window_end < best->window_end) best = v;
                    done = true;
                    break;
                }
            }
        }
    }
    return best;
}

std::vector<Violation> check_service_curve(const FlowView& f, const Curve& beta,
                                           const std::string& label) {
    std::vector<Violation> out;
    for (size_t j = 0; j < f.dep_t.size(); ++j) {
        const Rat& t = f.dep_t[j];

        // s = t: all bits arrived strictly before t, plus beta(0).
        Rat abar_t(0);
        for (size_t k = 0; k < f.arr_t.size(); ++k)
            if (f.arr_t[k] < t) abar_t = f.arr_cum[k];
        Rat rhs = abar_t + beta.eval(Rat(0)).finite();

        // s = 0 and every arrival instant <= t, arrivals counted strictly
        // before s.
        auto consider = [&](const Rat& s, const Rat& abar) {
            if (s > t) return;
            ExtRat b = beta.eval(t - s);
            if (b.is_infinite()) return;
            rhs = min(rhs, abar + b.finite());
        };
        consider(Rat(0), Rat(0));
        for (size_t k = 0; k < f.arr_t.size(); ++k)
            consider(f.arr_t[k], k == 0 ? Rat(0) : f.arr_cum[k - 1]);

        if (f.dep_cum[j] < rhs)
            out.push_back({label, -1, t, f.dep_cum[j], rhs, f.dep_cum[j] - rhs});
    }
    return out;
}

Rat backlog_sup(const Trace& trace, const Schedule& sched) {
    Rat sup(0);
    auto at = [&](const Rat& t) {
        Rat arrived(0), departed(0);
        for (size_t i = 0; i < trace.packets.size(); ++i) {
            if (trace.packets[i].arrival <= t) arrived += trace.packets[i].length;
            if (sched.departure[i] <= t) departed += trace.packets[i].length;
        }
        return arrived - departed;
    };
    for (const Packet& p : trace.packets) sup = max(sup, at(p.arrival));
    for (const Rat& d : sched.departure) sup = max(sup, at(d));
    return sup;
}

}  // namespace mcfifo::reference
