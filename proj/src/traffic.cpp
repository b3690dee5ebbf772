// traffic.cpp - Trace generators and conformance checking.
#include "mcfifo/traffic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mcfifo {

namespace {

constexpr long kGridDen = 1000000L;  // arrival grid: 1 microsecond

std::string greedy_header(const SystemConfig& config, int tagged) {
    std::ostringstream os;
    os << "mode=greedy config=" << config.name << " tagged=" << tagged;
    return os.str();
}

std::string random_header(const SystemConfig& config, uint64_t seed, const Rat& horizon,
                          const Rat& intensity) {
    std::ostringstream os;
    os << "mode=random config=" << config.name << " seed=" << seed
       << " horizon=" << horizon.str() << " intensity=" << intensity.str();
    return os.str();
}

}  // namespace

Trace greedy_burst(const SystemConfig& config, int tagged_class) {
    ensure_valid(config);
    if (tagged_class < 1 || tagged_class > config.size())
        throw std::invalid_argument("greedy_burst: no class with id " +
                                    std::to_string(tagged_class));

    // Each class sends its whole bucket depth at t = 0: full-size packets
    // plus one remainder packet (the remainder is in (0, max_packet]).
    std::vector<std::vector<Packet>> per_class;
    for (const ClassSpec& c : config.classes) {
        std::vector<Packet> pkts;
        Rat remaining = c.burst;
        long seq = 1;
        while (remaining > c.max_packet) {
            pkts.push_back({c.id, seq++, Rat(0), c.max_packet});
            remaining -= c.max_packet;
        }
        pkts.push_back({c.id, seq++, Rat(0), remaining});
        per_class.push_back(std::move(pkts));
    }

    // Tagged class's final packet goes last in the global tie order, so it
    // departs only after every other time-0 bit has been served.
    Trace out;
    out.header.push_back(greedy_header(config, tagged_class));
    for (int n = 1; n <= config.size(); ++n) {
        auto& pkts = per_class[n - 1];
        size_t keep = (n == tagged_class) ? pkts.size() - 1 : pkts.size();
        for (size_t i = 0; i < keep; ++i) out.packets.push_back(pkts[i]);
    }
    out.packets.push_back(per_class[tagged_class - 1].back());
    return out;
}

Trace shaped_random(const SystemConfig& config, uint64_t seed, const Rat& horizon,
                    const Rat& intensity) {
    ensure_valid(config);
    if (!(horizon > Rat(0))) throw std::invalid_argument("shaped_random: horizon must be positive");
    if (horizon > Rat(1000000000L))
        throw std::invalid_argument("shaped_random: horizon too large");
    if (intensity.sign() < 0 || intensity > Rat(1))
        throw std::invalid_argument("shaped_random: intensity must be in [0, 1]");

    // One substream per class so each class's draws are independent of the
    // other classes' packet counts.
    SplitMix64 base(seed);
    std::vector<uint64_t> class_seed;
    for (int n = 0; n < config.size(); ++n) class_seed.push_back(base.next());

    if (intensity.is_zero()) {  // zero offered load: the empty trace
        Trace out;
        out.header.push_back(random_header(config, seed, horizon, intensity));
        return out;
    }

    std::vector<Packet> all;
    for (const ClassSpec& c : config.classes) {
        if (c.rate.is_zero()) continue;
        mpz_class lmax_z = c.max_packet.floor();
        if (lmax_z < 1)
            throw std::invalid_argument("shaped_random: class " + std::to_string(c.id) +
                                        " needs max_packet >= 1");
        if (!lmax_z.fits_ulong_p())
            throw std::invalid_argument("shaped_random: class " + std::to_string(c.id) +
                                        " max_packet too large");
        const uint64_t lmax = lmax_z.get_ui();

        // Mean candidate gap (microseconds) so the offered load is about
        // intensity * rate: mean length / (intensity * rate).
        Rat mean_len(static_cast<long>(lmax) + 1, 2);
        Rat gap_mean = mean_len * Rat(kGridDen) / (intensity * c.rate);
        mpz_class m_z = (gap_mean + Rat(1, 2)).floor();
        if (m_z < 1) m_z = 1;
        const mpz_class m_cap(1000000000000000L);
        if (m_z > m_cap) m_z = m_cap;
        const uint64_t m = m_z.get_ui();

        SplitMix64 rng(class_seed[c.id - 1]);
        uint64_t t_us = 0;
        Rat tokens = c.burst;  // bucket level at the last release
        Rat last(0);           // last release instant
        long seq = 1;
        while (true) {
            t_us += rng.below(2 * m + 1);
            Rat t_cand(static_cast<long>(t_us), kGridDen);
            if (t_cand > horizon) break;
            Rat len(static_cast<long>(1 + rng.below(lmax)));

            // Release at the candidate instant if the bucket allows it
            // (never before the previous release); otherwise at the first
            // conforming instant, rounded up to the grid.
            Rat u = max(t_cand, last);
            Rat avail = min(c.burst, tokens + c.rate * (u - last));
            if (avail < len) {
                u = ceil_to_grid(last + (len - tokens) / c.rate, kGridDen);
                avail = min(c.burst, tokens + c.rate * (u - last));
            }
            all.push_back({c.id, seq++, u, len});
            tokens = avail - len;
            last = u;
        }
    }

    std::stable_sort(all.begin(), all.end(), [](const Packet& a, const Packet& b) {
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.class_id < b.class_id;
    });
    Trace out;
    out.header.push_back(random_header(config, seed, horizon, intensity));
    out.packets = std::move(all);
    return out;
}

std::optional<ConformanceViolation> conformance_check(const SystemConfig& config,
                                                      const Trace& trace) {
    ensure_valid(config);
    ensure_valid_trace(config, trace);

    std::optional<ConformanceViolation> best;
    for (const ClassSpec& c : config.classes) {
        // Streaming pass, no allocations: coalesce same-instant packets and
        // track the running minimum of P_{k-1} - r e_i; the window [e_i, e_k]
        // violates iff (P_k - r e_k) exceeds that minimum plus the burst.
        const mpq_class& r = c.rate.raw();
        const mpq_class& sigma = c.burst.raw();
        mpq_class prefix(0), re, y, x, runmin, thresh, cur_t, cur_bits;
        bool have_event = false, first = true, violated = false;
        auto flush = [&] {
            re = r * cur_t;
            y = prefix - re;
            if (first || cmp(y, runmin) < 0) {
                runmin = y;
                thresh = runmin + sigma;
                first = false;
            }
            prefix += cur_bits;
            x = y + cur_bits;
            if (cmp(x, thresh) > 0) violated = true;
        };
        for (const Packet& p : trace.packets) {
            if (p.class_id != c.id) continue;
            if (have_event && cmp(p.arrival.raw(), cur_t) == 0) {
                cur_bits += p.length.raw();
                continue;
            }
            if (have_event) {
                flush();
                if (violated) break;
            }
            cur_t = p.arrival.raw();
            cur_bits = p.length.raw();
            have_event = true;
        }
        if (have_event && !violated) flush();
        if (!violated) continue;

        // Detail pass (only on a violation): rebuild the event list and
        // locate the earliest violating window.
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
        size_t viol_k = 0;
        {
            Rat run_min, pf(0);
            for (size_t k = 0; k < et.size(); ++k) {
                Rat yk = pf - c.rate * et[k];
                if (k == 0 || yk < run_min) run_min = yk;
                pf += bits[k];
                Rat xk = pf - c.rate * et[k];
                if (xk - run_min > c.burst) {
                    viol_k = k;
                    break;
                }
            }
        }
        Rat pk(0);
        for (size_t i = 0; i <= viol_k; ++i) pk += bits[i];
        Rat x_k = pk - c.rate * et[viol_k];
        Rat pi(0);
        for (size_t i = 0; i <= viol_k; ++i) {
            Rat yi = pi - c.rate * et[i];
            if (x_k - yi > c.burst) {
                ConformanceViolation v{c.id, et[i], et[viol_k], pk - pi,
                                       c.rate * (et[viol_k] - et[i]) + c.burst};
                if (!best || v.window_end < best->window_end) best = v;
                break;
            }
            pi += bits[i];
        }
    }
    return best;
}

}  // namespace mcfifo
