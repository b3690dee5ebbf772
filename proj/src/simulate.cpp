// simulate.cpp - FIFO departure recursion and backlog step functions.
#include "mcfifo/simulate.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mcfifo {

Schedule simulate(const SystemConfig& config, const Trace& trace) {
    ensure_valid(config);
    ensure_valid_trace(config, trace);
    std::vector<Rat> inv_capacity(config.classes.size());
    for (size_t n = 0; n < config.classes.size(); n++)
        inv_capacity[n] = Rat(1) / config.classes[n].capacity;
    Schedule s;
    s.departure.reserve(trace.packets.size());
    s.delay.reserve(trace.packets.size());
    Rat prev(0);
    for (const auto& p : trace.packets) {
        Rat d = max(p.arrival, prev);
        d += p.length * inv_capacity[p.class_id - 1];
        s.departure.push_back(d);
        s.delay.push_back(d - p.arrival);
        prev = std::move(d);
    }
    return s;
}

namespace {

// Merges the arrival and departure streams of the selected packets into a
// right-continuous backlog step function. Arrivals are non-decreasing by
// trace invariant; departures are strictly increasing by construction.
StepFn backlog_of(const Trace& trace, const Schedule& schedule,
                  const std::vector<size_t>& idx) {
    StepFn out;
    out.sup = Rat(0);
    Rat backlog(0);
    size_t a = 0, d = 0;
    while (a < idx.size() || d < idx.size()) {
        // Next event time: the smaller of next arrival and next departure.
        Rat t;
        if (a < idx.size() && d < idx.size())
            t = min(trace.packets[idx[a]].arrival, schedule.departure[idx[d]]);
        else if (a < idx.size())
            t = trace.packets[idx[a]].arrival;
        else
            t = schedule.departure[idx[d]];
        while (a < idx.size() && trace.packets[idx[a]].arrival == t) {
            backlog += trace.packets[idx[a]].length;
            a++;
        }
        while (d < idx.size() && schedule.departure[idx[d]] == t) {
            backlog -= trace.packets[idx[d]].length;
            d++;
        }
        if (!out.steps.empty() && out.steps.back().first == t)
            out.steps.back().second = backlog;
        else
            out.steps.emplace_back(t, backlog);
        if (backlog > out.sup) out.sup = backlog;
    }
    return out;
}

}  // namespace

StepFn backlog_process(const Trace& trace, const Schedule& schedule) {
    if (trace.packets.size() != schedule.departure.size())
        throw std::invalid_argument("schedule does not match trace");
    std::vector<size_t> idx(trace.packets.size());
    for (size_t i = 0; i < idx.size(); i++) idx[i] = i;
    return backlog_of(trace, schedule, idx);
}

StepFn class_backlog_process(const Trace& trace, const Schedule& schedule, int class_id) {
    if (trace.packets.size() != schedule.departure.size())
        throw std::invalid_argument("schedule does not match trace");
    std::vector<size_t> idx;
    for (size_t i = 0; i < trace.packets.size(); i++)
        if (trace.packets[i].class_id == class_id) idx.push_back(i);
    return backlog_of(trace, schedule, idx);
}

NormalizedWorkload normalize(const SystemConfig& config, const Trace& trace) {
    ensure_valid(config);
    ensure_valid_trace(config, trace);
    NormalizedWorkload w;
    w.config.name = config.name + "-normalized";
    ClassSpec unit;
    unit.id = 1;
    unit.capacity = Rat(1);
    unit.rate = Rat(0);
    unit.burst = Rat(0);
    Rat max_service(0);
    for (const auto& c : config.classes) {
        unit.rate += c.rate / c.capacity;
        unit.burst += c.burst / c.capacity;
        max_service = max(max_service, c.max_packet / c.capacity);
    }
    unit.max_packet = max_service;
    w.config.classes.push_back(unit);

    w.trace.header = trace.header;
    w.trace.header.push_back("normalized from config " + config.name);
    long seq = 0;
    for (const auto& p : trace.packets) {
        Packet q;
        q.class_id = 1;
        q.seq = ++seq;
        q.arrival = p.arrival;
        q.length = p.length / config.cls(p.class_id).capacity;
        w.trace.packets.push_back(std::move(q));
    }
    return w;
}

void write_schedule(std::ostream& out, const Trace& trace, const Schedule& schedule) {
    if (trace.packets.size() != schedule.departure.size())
        throw std::invalid_argument("schedule does not match trace");
    for (const auto& h : trace.header) out << "# " << h << "\n";
    out << "# fields: arrival class_id length departure delay\n";
    for (size_t i = 0; i < trace.packets.size(); i++) {
        const auto& p = trace.packets[i];
        out << p.arrival.str() << " " << p.class_id << " " << p.length.str() << " "
            << schedule.departure[i].str() << " " << schedule.delay[i].str() << "\n";
    }
}

void write_schedule_file(const std::string& path, const Trace& trace, const Schedule& schedule) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open schedule file for writing: " + path);
    write_schedule(out, trace, schedule);
    if (!out.good()) throw std::runtime_error("failed writing schedule file: " + path);
}

void write_backlog(std::ostream& out, const StepFn& backlog) {
    out << "# fields: time backlog_bits\n";
    for (const auto& [t, b] : backlog.steps) out << t.str() << " " << b.str() << "\n";
}

void write_backlog_file(const std::string& path, const StepFn& backlog) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open backlog file for writing: " + path);
    write_backlog(out, backlog);
    if (!out.good()) throw std::runtime_error("failed writing backlog file: " + path);
}

}  // namespace mcfifo
