#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "burgers/expr.hpp"
#include "burgers/interval.hpp"
#include "burgers/quadrature.hpp"
#include "burgers/rootfind.hpp"

namespace burgers {

// One instance of u_t + g(u) u_x = f(u) with a chosen profile h(s).
// f, g are expressions in u; h is an expression in s; all three may also use
// names bound in `params`. For the homogeneous case (f identically 0) h is
// the t = 0 profile: u = h(x - t g(u)) reduces to u = h(x) at t = 0.
//
// phi_at_ref / ell_at_ref pin the additive constants of the quadrature maps
// (defaults give phi(u_ref) = 0 and ell(v_ref) = 0); the built-in examples
// use them to reproduce specific closed forms, since a fixed h only yields a
// fixed solution once those constants are fixed.
struct Problem {
    ExprPtr f, g, h;
    Bindings params;
    std::optional<Interval> u_domain;  // scan interval; defaults depend on f
    Interval s_domain{-10.0, 10.0};    // profile-argument interval (breaking time)
    double root_tol = 1e-10;
    double quad_tol = 1e-10;
    int n_scan = 1024;
    std::optional<double> u_ref;  // default: midpoint of the resolved domain
    std::optional<double> v_ref;  // default: 0 if attained, else phi(u_ref)
    double phi_at_ref = 0.0;
    double ell_at_ref = 0.0;

    bool homogeneous() const { return f && f->is_constant(0.0); }
};

struct CharSample {
    double t = 0.0, x = 0.0, u = 0.0;
};

// Samples of one characteristic curve: dx/dt = g(u), du/dt = f(u). For
// f = 0 the u component is constant up to integrator error.
struct CharPath {
    std::vector<CharSample> samples;
    double dt = 0.0;
    std::string method = "rk4";
    bool truncated = false;  // an evaluation error cut the integration short
};

// Prepared point solver. Construction substitutes parameters and, for
// nonhomogeneous problems, builds the phi and ell maps (which validates the
// constant-sign hypothesis on f). Point solves at distinct (x, t) are
// independent and may run concurrently.
class Solver {
public:
    explicit Solver(Problem p);

    bool homogeneous() const { return hom_; }
    const Problem& problem() const { return p_; }
    Interval u_domain() const { return domain_; }

    BranchSet solve(double x, double t) const;

    // F(u; x, t) whose zeros are the solution branches:
    //   homogeneous:    u - h(x - t g(u))
    //   nonhomogeneous: x - ell(phi(u)) - h(t - phi(u))
    double implicit_f(double u, double x, double t) const;

    const PhiMap& phi() const;
    const EllMap& ell() const;

private:
    Problem p_;
    ExprPtr f_, g_, h_;  // parameters substituted
    bool hom_;
    Interval domain_;
    std::optional<PhiMap> phi_;
    std::optional<EllMap> ell_;
};

// The paper-facing operations. Each wraps a Solver constructed on the fly;
// construct a Solver directly when solving many points of one problem.
BranchSet solve_homogeneous(const Problem& p, double x, double t);
BranchSet solve_nonhomogeneous(const Problem& p, double x, double t);

// phi for f plus the transformed speed g(phi^{-1}(v)); v(x, t) = phi(u(x, t))
// satisfies v_t + g_hat(v) v_x = 1 (checked by the verify module).
struct Canonical {
    PhiMap phi;
    std::function<double(double)> g_hat;
    Interval v_domain;  // attained range of phi
};
Canonical canonicalize(const Problem& p);

// Solves the unit-source equation u_t + g(u) u_x = 1 through its implicit
// form x = G(u) + h(t - u), where G(u) = anchor + integral of g from ref.
// The speed may be an arbitrary evaluator (e.g. the canonicalized g_hat).
class CanonicalSolver {
public:
    CanonicalSolver(std::function<double(double)> g, ExprPtr h, const Bindings& params,
                    Interval domain, double ref, double g_anchor, double tol, int n_scan,
                    double root_tol = 1e-10);

    BranchSet solve(double x, double t) const;
    double antiderivative(double u) const;  // G(u)

private:
    std::function<double(double)> g_;
    ExprPtr h_;
    Interval domain_;
    double ref_, anchor_, tol_, root_tol_;
    int n_scan_;
    std::vector<double> grid_, acc_;
};

BranchSet solve_canonical(ExprPtr g, ExprPtr h, const Bindings& params, double x, double t,
                          Interval u_domain, double u_ref, double tol = 1e-10,
                          int n_scan = 1024);

// Classic RK4 trace of one characteristic from (x0, u0) at t = 0.
CharPath characteristic_trace(const Problem& p, double x0, double u0, double t_end, double dt);

// First gradient-blow-up time for the homogeneous problem with profile h:
// t* = -1 / min over s of d/ds[g(h(s))] when that minimum is negative,
// nothing otherwise. The minimum is sampled, so the result is an estimate
// from below of the true infimum.
std::optional<double> breaking_time(const Problem& p, Interval s_interval, int n_samples = 4096);

}  // namespace burgers
