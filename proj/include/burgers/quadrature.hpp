#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/expr.hpp"
#include "burgers/interval.hpp"

namespace burgers {

namespace detail {

template <class F>
double simpson_split(F& fn, double a, double fa, double m, double fm, double b, double fb,
                     double whole, double eps, int depth, bool& exhausted) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = fn(lm);
    double frm = fn(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
        throw EvalDomainError("integrate: non-finite integrand sample");
    }
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = (left + right - whole) / 15.0;
    // stop on tolerance, on depth, or when the panel has no representable
    // midpoints left to refine with
    bool splittable = a < lm && lm < m && m < rm && rm < b;
    if (std::fabs(err) <= eps || depth <= 0 || !splittable) {
        if (std::fabs(err) > eps) exhausted = true;
        return left + right + err;
    }
    return simpson_split(fn, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1, exhausted) +
           simpson_split(fn, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1, exhausted);
}

}  // namespace detail

// Adaptive Simpson quadrature with |error| <= tol * max(1, |result|) and a
// maximum recursion depth of 48. Orientation follows the usual convention:
// integrating from a down to b < a negates the result. Depth exhaustion
// throws ConvergenceError carrying the partial estimate.
template <class F>
double integrate(F&& fn, double a, double b, double tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    double m = 0.5 * (a + b);
    double fa = fn(a);
    double fm = fn(m);
    double fb = fn(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        throw EvalDomainError("integrate: non-finite integrand sample");
    }
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double eps = tol * std::fmax(1.0, std::fabs(whole));
    bool exhausted = false;
    double result =
        sign * detail::simpson_split(fn, a, fa, m, fm, b, fb, whole, eps, 48, exhausted);
    if (exhausted) {
        throw ConvergenceError("integrate: recursion depth exhausted before reaching tolerance",
                               result);
    }
    return result;
}

// The strictly monotone map phi(u) = anchor + integral from u_ref to u of
// du'/f(u'). Construction validates that f keeps one nonzero sign on the
// domain (dense sampling) and precomputes a ladder of checkpoints; evaluation
// integrates from the nearest checkpoint. Immutable after construction, so
// concurrent evaluation is safe.
class PhiMap {
public:
    PhiMap(ExprPtr f, const Bindings& params, double u_ref, Interval domain, double tol,
           double phi_at_ref = 0.0);

    double operator()(double u) const;
    double inverse(double v) const;
    double derivative(double u) const { return 1.0 / f_at(u); }  // phi' = 1/f
    double f_at(double u) const;

    const Interval& domain() const { return domain_; }
    Interval range() const;  // attained values, lo <= hi
    double u_ref() const { return u_ref_; }
    double tol() const { return tol_; }
    bool increasing() const { return sign_ > 0.0; }

private:
    friend class EllMap;
    static constexpr int kLadder = 1024;

    double checkpoint_eval(double u) const;

    ExprPtr f_;  // parameters already substituted
    Interval domain_;
    double u_ref_;
    double tol_;
    double sign_ = 1.0;
    std::vector<double> grid_, phi_;
};

// The map ell(v) = anchor + integral from v_ref to v of g(phi^{-1}(w)) dw,
// defined on the attained range of phi. Two equivalent evaluation routes are
// kept: operator() integrates g(phi^{-1}(w)) in v, while at_phi_of(u)
// integrates g/f in u (d/du ell(phi(u)) = g(u)/f(u)); the second avoids the
// inverse map and is what the solvers use in hot loops.
class EllMap {
public:
    EllMap(ExprPtr g, const Bindings& params, PhiMap phi, double v_ref, double tol,
           double ell_at_ref = 0.0);

    double operator()(double v) const;
    double at_phi_of(double u) const;
    double g_hat(double v) const;  // g(phi^{-1}(v))

    const PhiMap& phi() const { return phi_; }
    double v_ref() const { return v_ref_; }
    double tol() const { return tol_; }

private:
    static constexpr int kLadder = 512;

    ExprPtr g_;  // parameters already substituted
    PhiMap phi_;
    double v_ref_;
    double tol_;
    std::vector<double> vgrid_, ell_;  // ladder over phi's range
    std::vector<double> ugrid_, lofu_;  // ladder over phi's domain
};

PhiMap build_phi_map(ExprPtr f, const Bindings& params, double u_ref, Interval domain, double tol,
                     double phi_at_ref = 0.0);

double phi_inverse(const PhiMap& map, double v);

EllMap build_ell(ExprPtr g, const Bindings& params, const PhiMap& map, double v_ref, double tol,
                 double ell_at_ref = 0.0);

// Closed-form antiderivative of g(phi^{-1}) for the power-law family
// f = u^n, g = m u^(m-1), as an expression in the canonical variable u:
//   1 < n != m : (m/(m-n)) ((1-n) u)^((n-m)/(n-1))   (valid where (1-n) u > 0)
//   n = m != 1 : (m/(1-m)) ln((1-m) u)
//   n = 1, m != 1 : (m/(m-1)) exp((m-1) u)
//   n = m = 1  : exp(u)
// Pairs outside these conditions throw ConstructionError.
ExprPtr ell_closed_form(int m, int n);

}  // namespace burgers
