// trace.hpp - Packet traces: in-memory form and the on-disk text format.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcfifo/rational.hpp"
#include "mcfifo/system.hpp"

namespace mcfifo {

// One packet arrival. Lengths are exact rationals so that normalized traces
// (lengths divided by a capacity) round-trip losslessly; generated traffic
// uses integer bit counts.
struct Packet {
    int class_id = 0;   // 1-based id into the config
    long seq = 0;       // 1-based position within its class
    Rat arrival;        // seconds, >= 0
    Rat length;         // bits, > 0
};

// A trace is the global arrival sequence. Its order is authoritative: ties
// between packets arriving at the same instant are broken by position in
// this list, and the simulator serves packets in exactly this order.
struct Trace {
    std::vector<Packet> packets;
    std::vector<std::string> header;  // provenance lines from/for the file, without "# "
};

// One violated trace invariant.
struct TraceError {
    long line;  // 0-based packet index
    std::string message;
};

// Checks arrival-time monotonicity in global order, per-class sequence
// numbering (1,2,... per class in order of appearance), class ids present
// in the config, and 0 < length <= max_packet of the class.
std::vector<TraceError> validate_trace(const SystemConfig& config, const Trace& trace);

void ensure_valid_trace(const SystemConfig& config, const Trace& trace);

// Text format: '#'-prefixed provenance header lines, then one packet per
// line as "<arrival> <class_id> <length>", where arrival and length are
// rationals ("p/q") or plain decimals. Line order is the global tie order.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

}  // namespace mcfifo
