// trace.cpp - Trace validation and the one-packet-per-line text format.
#include "mcfifo/trace.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcfifo {

std::vector<TraceError> validate_trace(const SystemConfig& config, const Trace& trace) {
    std::vector<TraceError> errs;
    std::map<int, long> next_seq;
    Rat prev_arrival(0);
    for (size_t i = 0; i < trace.packets.size(); i++) {
        const auto& p = trace.packets[i];
        long line = static_cast<long>(i);
        bool known_class = p.class_id >= 1 && p.class_id <= config.size();
        if (!known_class)
            errs.push_back({line, "unknown class id " + std::to_string(p.class_id)});
        if (p.arrival.sign() < 0) errs.push_back({line, "arrival time must be >= 0"});
        if (i > 0 && p.arrival < prev_arrival)
            errs.push_back({line, "arrival times must be non-decreasing in trace order"});
        prev_arrival = p.arrival;
        if (p.length.sign() <= 0) errs.push_back({line, "packet length must be > 0"});
        if (known_class && p.length > config.cls(p.class_id).max_packet)
            errs.push_back({line, "packet length exceeds max_packet of class " +
                                      std::to_string(p.class_id)});
        long expect = ++next_seq[p.class_id];
        if (p.seq != expect)
            errs.push_back({line, "class " + std::to_string(p.class_id) + " sequence must be " +
                                      std::to_string(expect) + ", got " + std::to_string(p.seq)});
    }
    return errs;
}

void ensure_valid_trace(const SystemConfig& config, const Trace& trace) {
    auto errs = validate_trace(config, trace);
    if (errs.empty()) return;
    std::string msg = "invalid trace:";
    for (size_t i = 0; i < errs.size() && i < 5; i++)
        msg += " [packet " + std::to_string(errs[i].line) + "] " + errs[i].message + ";";
    if (errs.size() > 5) msg += " (+" + std::to_string(errs.size() - 5) + " more)";
    throw std::invalid_argument(msg);
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::map<int, long> next_seq;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t b = line.find_first_not_of("# ");
            trace.header.push_back(b == std::string::npos ? "" : line.substr(b));
            continue;
        }
        std::istringstream ls(line);
        std::string arrival_s, class_s, length_s;
        if (!(ls >> arrival_s >> class_s >> length_s))
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": expected 'arrival class_id length'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": trailing fields");
        auto arrival = Rat::parse(arrival_s);
        auto length = Rat::parse(length_s);
        if (!arrival)
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": bad arrival time '" + arrival_s + "'");
        if (!length)
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": bad length '" + length_s + "'");
        int cid;
        try {
            size_t used = 0;
            cid = std::stoi(class_s, &used);
            if (used != class_s.size()) throw std::invalid_argument(class_s);
        } catch (const std::exception&) {
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": bad class id '" + class_s + "'");
        }
        Packet p;
        p.class_id = cid;
        p.seq = ++next_seq[cid];
        p.arrival = *arrival;
        p.length = *length;
        trace.packets.push_back(std::move(p));
    }
    return trace;
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
    for (const auto& h : trace.header) out << "# " << h << "\n";
    for (const auto& p : trace.packets)
        out << p.arrival.str() << " " << p.class_id << " " << p.length.str() << "\n";
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    write_trace(out, trace);
    if (!out.good()) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace mcfifo
