// simulate.hpp - Exact FIFO simulation, backlog processes, normalization.
#pragma once

#include <utility>
#include <vector>

#include "mcfifo/trace.hpp"

namespace mcfifo {

// Departure schedule for a trace, index-aligned with trace.packets.
struct Schedule {
    std::vector<Rat> departure;  // seconds
    std::vector<Rat> delay;      // departure - arrival
};

// Serves packets in global trace order, one at a time, each at its own
// class capacity: departure_j = max(arrival_j, departure_{j-1}) + length_j / C.
// The server never idles while packets are queued. Validates the trace.
Schedule simulate(const SystemConfig& config, const Trace& trace);

// Right-continuous step function sampled at its jump instants: value(t)
// holds from each listed time up to (not including) the next one.
struct StepFn {
    std::vector<std::pair<Rat, Rat>> steps;  // (time, value), times strictly increasing
    Rat sup;                                 // largest value attained
};

// Backlog B(t) = bits arrived by t minus bits departed by t, over the whole
// aggregate, with one step entry per arrival/departure event instant.
StepFn backlog_process(const Trace& trace, const Schedule& schedule);

// Backlog restricted to one class's bits.
StepFn class_backlog_process(const Trace& trace, const Schedule& schedule, int class_id);

// The same workload re-expressed for a one-class unit-rate server: packet
// lengths become length / C_class (service times), the single class gets
// capacity 1, rate rho, burst = sum of burst_n / C_n, and max_packet =
// max of max_packet_n / C_n. Departure times are preserved exactly.
struct NormalizedWorkload {
    SystemConfig config;
    Trace trace;
};

NormalizedWorkload normalize(const SystemConfig& config, const Trace& trace);

// Schedule file format: '#' header lines, then one line per packet:
// "<arrival> <class_id> <length> <departure> <delay>".
void write_schedule(std::ostream& out, const Trace& trace, const Schedule& schedule);
void write_schedule_file(const std::string& path, const Trace& trace, const Schedule& schedule);

// Backlog file format: '#' header lines, then "<time> <backlog_bits>" per step.
void write_backlog(std::ostream& out, const StepFn& backlog);
void write_backlog_file(const std::string& path, const StepFn& backlog);

}  // namespace mcfifo
