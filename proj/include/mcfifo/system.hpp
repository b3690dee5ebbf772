// system.hpp - Multiclass FIFO system description and validation.
#pragma once

#include <string>
#include <vector>

#include "mcfifo/rational.hpp"

namespace mcfifo {

// One traffic class: a dedicated constant service rate plus the leaky-bucket
// envelope its arrivals honor. All quantities are exact rationals; capacity
// and rate are in bits per second, burst and max_packet in bits.
struct ClassSpec {
    int id = 0;          // 1-based, contiguous across the config
    Rat capacity;        // C_n > 0: service rate while a packet of this class is in service
    Rat rate;            // r_n >= 0: sustained arrival rate
    Rat burst;           // sigma_n >= max_packet: bucket depth
    Rat max_packet;      // L_n > 0: largest packet length
};

// A named single-hop system: one work-conserving FIFO server shared by N
// classes, each served at its own constant rate.
struct SystemConfig {
    std::string name;
    std::vector<ClassSpec> classes;

    int size() const { return static_cast<int>(classes.size()); }
    // Class lookup by 1-based id; throws std::out_of_range for unknown ids.
    const ClassSpec& cls(int id) const;

    // Smallest / largest per-class capacity; require a validated config.
    Rat c_min() const;
    Rat c_max() const;
    // Largest max_packet across classes.
    Rat max_packet() const;
    // Sum of arrival rates.
    Rat total_rate() const;
    // Sum over classes of burst_n / capacity_n (a time).
    Rat total_normalized_burst() const;
};

// One violated configuration invariant.
struct ConfigError {
    int class_id;  // 0 when the problem is not tied to one class
    std::string message;
};

// Checks every structural invariant (at least one class; ids 1..N in order;
// positive capacities and max_packet; non-negative rate; burst >= max_packet).
// Returns an empty list for a valid config.
std::vector<ConfigError> validate(const SystemConfig& config);

// Throws std::invalid_argument with all messages joined if invalid.
void ensure_valid(const SystemConfig& config);

// Server utilization figures.
struct Utilization {
    Rat rho;                    // sum over n of r_n / C_n
    std::vector<Rat> rho_bar;   // rho_bar[n-1] = rho - r_n / C_n (cross-traffic load seen by n)
};

Utilization utilization(const SystemConfig& config);

}  // namespace mcfifo
