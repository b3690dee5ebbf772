// fixtures.hpp - Reference system configs shared by several test files.
#pragma once

#include "mcfifo/system.hpp"

namespace fixtures {

using mcfifo::Rat;
using mcfifo::SystemConfig;

// Two classes at 1 Mbps and 100 Mbps, utilization 4/5.
inline SystemConfig s1() {
    SystemConfig c;
    c.name = "s1";
    c.classes = {{1, Rat(1000000), Rat(400000), Rat(100000), Rat(12000)},
                 {2, Rat(100000000L), Rat(40000000L), Rat(1000000), Rat(12000)}};
    return c;
}

// Two identical 1 Mbps classes, utilization 3/5.
inline SystemConfig s2() {
    SystemConfig c;
    c.name = "s2";
    c.classes = {{1, Rat(1000000), Rat(300000), Rat(100000), Rat(12000)},
                 {2, Rat(1000000), Rat(300000), Rat(100000), Rat(12000)}};
    return c;
}

}  // namespace fixtures
