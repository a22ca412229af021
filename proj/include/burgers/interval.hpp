#pragma once

namespace burgers {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

}  // namespace burgers
