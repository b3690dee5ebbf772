// system.cpp - System config derived quantities and validation.
#include "mcfifo/system.hpp"

#include <stdexcept>

namespace mcfifo {

const ClassSpec& SystemConfig::cls(int id) const {
    for (const auto& c : classes)
        if (c.id == id) return c;
    throw std::out_of_range("no class with id " + std::to_string(id));
}

Rat SystemConfig::c_min() const {
    Rat m = classes.front().capacity;
    for (const auto& c : classes) m = min(m, c.capacity);
    return m;
}

Rat SystemConfig::c_max() const {
    Rat m = classes.front().capacity;
    for (const auto& c : classes) m = max(m, c.capacity);
    return m;
}

Rat SystemConfig::max_packet() const {
    Rat m = classes.front().max_packet;
    for (const auto& c : classes) m = max(m, c.max_packet);
    return m;
}

Rat SystemConfig::total_rate() const {
    Rat s(0);
    for (const auto& c : classes) s += c.rate;
    return s;
}

Rat SystemConfig::total_normalized_burst() const {
    Rat s(0);
    for (const auto& c : classes) s += c.burst / c.capacity;
    return s;
}

std::vector<ConfigError> validate(const SystemConfig& config) {
    std::vector<ConfigError> errs;
    if (config.classes.empty()) {
        errs.push_back({0, "config has no classes"});
        return errs;
    }
    for (size_t i = 0; i < config.classes.size(); i++) {
        const auto& c = config.classes[i];
        int expect = static_cast<int>(i) + 1;
        if (c.id != expect)
            errs.push_back({c.id, "class ids must be 1.." + std::to_string(config.classes.size()) +
                                      " in order; position " + std::to_string(expect) + " has id " +
                                      std::to_string(c.id)});
        if (c.capacity.sign() <= 0) errs.push_back({c.id, "capacity must be > 0"});
        if (c.rate.sign() < 0) errs.push_back({c.id, "rate must be >= 0"});
        if (c.max_packet.sign() <= 0) errs.push_back({c.id, "max_packet must be > 0"});
        if (c.burst < c.max_packet)
            errs.push_back({c.id, "burst must be >= max_packet"});
    }
    return errs;
}

void ensure_valid(const SystemConfig& config) {
    auto errs = validate(config);
    if (errs.empty()) return;
    std::string msg = "invalid config '" + config.name + "':";
    for (const auto& e : errs) {
        msg += " [class " + std::to_string(e.class_id) + "] " + e.message + ";";
    }
    throw std::invalid_argument(msg);
}

Utilization utilization(const SystemConfig& config) {
    ensure_valid(config);
    Utilization u;
    u.rho = Rat(0);
    std::vector<Rat> share;
    share.reserve(config.classes.size());
    for (const auto& c : config.classes) {
        share.push_back(c.rate / c.capacity);
        u.rho += share.back();
    }
    for (const auto& s : share) u.rho_bar.push_back(u.rho - s);
    return u;
}

}  // namespace mcfifo
