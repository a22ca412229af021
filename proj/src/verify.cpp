#include "burgers/verify.hpp"

#include <cmath>
#include <limits>

namespace burgers {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Three-point first derivative that stays second order on mildly non-uniform
// grids; reduces to the standard central difference for equal spacing.
double central_derivative(double um, double u0, double up, double hm, double hp) {
    return (-hp * hp * um + (hp * hp - hm * hm) * u0 + hm * hm * up) /
           (hm * hp * (hm + hp));
}

// Residual sweep shared by the PDE and canonical checks. g_of / f_of act on
// the node value. The parallel kernel fills the per-node array; statistics
// are reduced serially in index order so reports are deterministic.
ResidualReport residual_core(const Field& field,
                             const std::function<double(double)>& g_of,
                             const std::function<double(double)>& f_of, double tol,
                             Execution exec) {
    field.check_axes();
    if (field.nx() < 3 || field.nt() < 3) {
        throw Error("residual: need at least 3 nodes per axis");
    }

    ResidualReport report;
    report.tol = tol;
    report.dx = (field.xs.back() - field.xs.front()) / static_cast<double>(field.nx() - 1);
    report.dt = (field.ts.back() - field.ts.front()) / static_cast<double>(field.nt() - 1);
    report.residuals.assign(field.u.size(), kNaN);

    const std::size_t nx = field.nx();
    const std::size_t nt = field.nt();
    const std::size_t interior = (nx - 2) * (nt - 2);

    detail::for_each_index(interior, exec, [&](std::size_t k) {
        std::size_t ix = 1 + k % (nx - 2);
        std::size_t it = 1 + k / (nx - 2);
        if (!field.is_valid(it, ix) || !field.is_valid(it, ix - 1) ||
            !field.is_valid(it, ix + 1) || !field.is_valid(it - 1, ix) ||
            !field.is_valid(it + 1, ix)) {
            return;
        }
        double u0 = field.at(it, ix);
        double ux = central_derivative(field.at(it, ix - 1), u0, field.at(it, ix + 1),
                                       field.xs[ix] - field.xs[ix - 1],
                                       field.xs[ix + 1] - field.xs[ix]);
        double ut = central_derivative(field.at(it - 1, ix), u0, field.at(it + 1, ix),
                                       field.ts[it] - field.ts[it - 1],
                                       field.ts[it + 1] - field.ts[it]);
        try {
            double r = ut + g_of(u0) * ux - f_of(u0);
            if (std::isfinite(r)) report.residuals[field.index(it, ix)] = r;
        } catch (const Error&) {
            // node excluded
        }
    });

    double sum = 0.0;
    for (double r : report.residuals) {
        if (std::isnan(r)) continue;
        ++report.interior_nodes;
        double a = std::fabs(r);
        sum += a;
        if (a > report.max_abs) report.max_abs = a;
    }
    if (report.interior_nodes == 0) {
        throw Error("residual: no valid interior nodes (empty report)");
    }
    report.mean_abs = sum / static_cast<double>(report.interior_nodes);
    report.pass = report.max_abs <= tol;
    return report;
}

}  // namespace

ResidualReport residual_field(const ExprPtr& f, const ExprPtr& g, const Bindings& params,
                              const Field& field, double tol, Execution exec) {
    ExprPtr fs = substitute(f, params);
    ExprPtr gs = substitute(g, params);
    return residual_core(
        field, [&gs](double u) { return eval(*gs, "u", u); },
        [&fs](double u) { return eval(*fs, "u", u); }, tol, exec);
}

ResidualReport residual_field(const Problem& p, const Field& field, double tol, Execution exec) {
    return residual_field(p.f, p.g, p.params, field, tol, exec);
}

ResidualReport verify_canonical(const PhiMap& map, const std::function<double(double)>& g_hat,
                                const Field& u_field, double tol, Execution exec) {
    Field v_field = map_field(u_field, [&map](double u) { return map(u); }, exec);
    return residual_core(v_field, g_hat, [](double) { return 1.0; }, tol, exec);
}

ExprPtr symbolic_residual(const ExprPtr& f, const ExprPtr& g, const ExprPtr& u_of_xt) {
    ExprPtr ut = differentiate(u_of_xt, "t");
    ExprPtr ux = differentiate(u_of_xt, "x");
    ExprPtr g_of_u = substitute(g, "u", u_of_xt);
    ExprPtr f_of_u = substitute(f, "u", u_of_xt);
    return Expr::subtract(Expr::add(ut, Expr::multiply(g_of_u, ux)), f_of_u);
}

}  // namespace burgers
