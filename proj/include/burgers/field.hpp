#pragma once

#include <cstdint>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

// Rectangular sample of a candidate solution u(x, t). Nodes are row-major
// with t as the slow axis. Invalid nodes (failed root-finding, multivalued
// point under a single-branch selection, evaluation-domain error) carry a
// cleared flag and are excluded from residual statistics.
struct Field {
    enum class Provenance { implicit_solve, closed_form };

    std::vector<double> xs, ts;  // strictly increasing
    std::vector<double> u;
    std::vector<std::uint8_t> valid;
    Provenance provenance = Provenance::closed_form;

    std::size_t nx() const { return xs.size(); }
    std::size_t nt() const { return ts.size(); }
    std::size_t index(std::size_t it, std::size_t ix) const { return it * xs.size() + ix; }
    double& at(std::size_t it, std::size_t ix) { return u[index(it, ix)]; }
    double at(std::size_t it, std::size_t ix) const { return u[index(it, ix)]; }
    bool is_valid(std::size_t it, std::size_t ix) const { return valid[index(it, ix)] != 0; }

    std::size_t invalid_count() const;
    void check_axes() const;  // throws unless both axes are strictly increasing
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace burgers
