#pragma once

#include <functional>
#include <vector>

#include "burgers/expr.hpp"
#include "burgers/field.hpp"
#include "burgers/grid.hpp"
#include "burgers/quadrature.hpp"
#include "burgers/solver.hpp"

namespace burgers {

// Defect statistics of a candidate field against u_t + g(u) u_x = f(u).
// Derivatives are second-order central differences on the field's own grid;
// a node enters the statistics only when it and its four neighbours are
// valid interior nodes. `residuals` keeps the per-node values (NaN where
// excluded) for refinement studies.
struct ResidualReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::size_t interior_nodes = 0;
    double tol = 0.0;
    bool pass = false;
    double dx = 0.0, dt = 0.0;  // stencil spacing used (mean grid spacing)
    std::vector<double> residuals;

    double at(const Field& field, std::size_t it, std::size_t ix) const {
        return residuals[field.index(it, ix)];
    }
};

ResidualReport residual_field(const ExprPtr& f, const ExprPtr& g, const Bindings& params,
                              const Field& field, double tol,
                              Execution exec = Execution::openmp);

ResidualReport residual_field(const Problem& p, const Field& field, double tol,
                              Execution exec = Execution::openmp);

// Checks the canonicalized equation v_t + g_hat(v) v_x = 1 on v = phi(u),
// applied nodewise to a u-field.
ResidualReport verify_canonical(const PhiMap& map, const std::function<double(double)>& g_hat,
                                const Field& u_field, double tol,
                                Execution exec = Execution::openmp);

// Symbolic residual u_t + g(u) u_x - f(u) of a closed-form candidate in
// (x, t); the cross-check path used in tests alongside the finite-difference
// route above.
ExprPtr symbolic_residual(const ExprPtr& f, const ExprPtr& g, const ExprPtr& u_of_xt);

}  // namespace burgers
