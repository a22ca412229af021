#include "burgers/field.hpp"

namespace burgers {

std::size_t Field::invalid_count() const {
    std::size_t n = 0;
    for (auto v : valid) {
        if (!v) ++n;
    }
    return n;
}

void Field::check_axes() const {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) throw Error("field: x axis is not strictly increasing");
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (!(ts[i] < ts[i + 1])) throw Error("field: t axis is not strictly increasing");
    }
    if (u.size() != xs.size() * ts.size() || valid.size() != u.size()) {
        throw Error("field: node storage does not match the axes");
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw Error("linspace: need at least 2 points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

}  // namespace burgers
