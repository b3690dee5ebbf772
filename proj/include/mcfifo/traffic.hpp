// traffic.hpp - Trace generators and leaky-bucket conformance checking.
#pragma once

#include <cstdint>
#include <optional>

#include "mcfifo/trace.hpp"

namespace mcfifo {

// Deterministic 64-bit generator (splitmix64), pinned here so generated
// traces are bit-identical across platforms and standard-library versions.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n), n >= 1. Unbiased (multiply-shift with
    // rejection), and independent of std::uniform_int_distribution, whose
    // output is implementation-defined.
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            uint64_t t = (-n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }
};

// Worst-case burst: every class emits its full bucket depth at t = 0,
// packetized as max-size packets plus one remainder, and the tagged class's
// last packet is placed at the very end of the global order (it leaves the
// server last among the time-0 burst).
Trace greedy_burst(const SystemConfig& config, int tagged_class);

// Random conformant traffic: per class, candidate arrivals on a 1-microsecond
// grid with uniform inter-arrival gaps scaled so the mean offered rate is
// intensity * rate_n, and uniform integer lengths in [1, floor(max_packet)].
// A token bucket (initially full) delays any candidate that would violate
// the class envelope until it conforms, rounded up to the grid; FIFO order
// within a class is preserved. Classes are merged by (arrival, class id).
// Candidates stop after `horizon` seconds; delayed releases may exceed it.
Trace shaped_random(const SystemConfig& config, uint64_t seed, const Rat& horizon,
                    const Rat& intensity);

// Earliest violated arrival-envelope window, if any.
struct ConformanceViolation {
    int class_id;
    Rat window_start;   // s <= t, both arrival instants of the class
    Rat window_end;     // t
    Rat observed_bits;  // bits of the class arriving within [s, t]
    Rat allowed_bits;   // rate * (t - s) + burst
};

// Checks every class against its leaky-bucket envelope: for all arrival
// instants s <= t of the class, bits in the closed window [s, t] must not
// exceed rate * (t - s) + burst. Linear-time (prefix-minimum form of the
// pairwise window check). Returns the violation with the earliest window
// end (ties: lowest class id), or nullopt if every class conforms.
std::optional<ConformanceViolation> conformance_check(const SystemConfig& config,
                                                      const Trace& trace);

}  // namespace mcfifo
