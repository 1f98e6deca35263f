#pragma once

// Graph curves y = f(x) given by samplers of f and its first two derivatives.

#include "homog/shears.hpp"

#include <limits>
#include <string>

namespace homog {

struct GraphCurve {
    std::string name;
    RealMap f;
    RealMap df;
    RealMap d2f;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
};

} // namespace homog
