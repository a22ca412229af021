#include "burgers/solver.hpp"

#include <algorithm>
#include <cmath>

namespace burgers {

namespace {

constexpr Interval kHomogeneousScan{-100.0, 100.0};
constexpr Interval kNonhomogeneousScan{-10.0, 10.0};

// Largest subinterval of `iv` on which f keeps one nonzero finite sign,
// found by dense sampling and shrunk half a step inward at cut ends.
Interval constant_sign_window(const Expr& f, Interval iv) {
    constexpr int kSamples = 1024;
    double step = iv.width() / kSamples;
    Interval best{0.0, 0.0};
    int run_start = -1;
    bool run_negative = false;
    auto flush = [&](int end_index) {
        if (run_start < 0) return;
        double lo = iv.lo + run_start * step;
        double hi = iv.lo + end_index * step;
        if (run_start > 0) lo += 0.5 * step;
        if (end_index < kSamples) hi -= 0.5 * step;
        if (hi - lo > best.width()) best = {lo, hi};
    };
    for (int i = 0; i <= kSamples; ++i) {
        double u = iv.lo + i * step;
        double v;
        bool usable = true;
        try {
            v = eval(f, "u", u);
            usable = std::isfinite(v) && v != 0.0;
        } catch (const Error&) {
            usable = false;
        }
        if (!usable) {
            flush(i - 1 >= 0 ? i - 1 : 0);
            run_start = -1;
            continue;
        }
        if (run_start < 0) {
            run_start = i;
            run_negative = std::signbit(v);
        } else if (std::signbit(v) != run_negative) {
            flush(i - 1);
            run_start = i;
            run_negative = std::signbit(v);
        }
    }
    flush(kSamples);
    if (!(best.width() > 0.0)) {
        throw ConstructionError(
            "no constant-sign window for f on the default domain; declare u_domain");
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

Solver::Solver(Problem p)
    : p_(std::move(p)),
      f_(substitute(p_.f, p_.params)),
      g_(substitute(p_.g, p_.params)),
      h_(substitute(p_.h, p_.params)),
      hom_(p_.homogeneous()) {
    if (!p_.f || !p_.g || !p_.h) throw ConstructionError("problem is missing f, g or h");

    if (p_.u_domain) {
        domain_ = *p_.u_domain;
    } else if (hom_) {
        domain_ = kHomogeneousScan;
    } else {
        domain_ = constant_sign_window(*f_, kNonhomogeneousScan);
    }
    if (!(domain_.lo < domain_.hi)) throw ConstructionError("empty u_domain");

    if (!hom_) {
        double u_ref = p_.u_ref.value_or(domain_.mid());
        phi_.emplace(f_, Bindings{}, u_ref, domain_, p_.quad_tol, p_.phi_at_ref);
        double v_ref;
        if (p_.v_ref) {
            v_ref = *p_.v_ref;
        } else {
            Interval rng = phi_->range();
            v_ref = rng.contains(0.0) ? 0.0 : p_.phi_at_ref;
        }
        ell_.emplace(g_, Bindings{}, *phi_, v_ref, p_.quad_tol, p_.ell_at_ref);
    }
}

double Solver::implicit_f(double u, double x, double t) const {
    if (hom_) {
        double s = x - t * eval(*g_, "u", u);
        return u - eval(*h_, "s", s);
    }
    double v = (*phi_)(u);
    return x - ell_->at_phi_of(u) - eval(*h_, "s", t - v);
}

BranchSet Solver::solve(double x, double t) const {
    auto f = [this, x, t](double u) { return implicit_f(u, x, t); };
    BranchSet out = find_all_roots(f, domain_, p_.n_scan, p_.root_tol);
    out.x = x;
    out.t = t;
    return out;
}

const PhiMap& Solver::phi() const {
    if (!phi_) throw Error("phi map is only defined for nonhomogeneous problems");
    return *phi_;
}

const EllMap& Solver::ell() const {
    if (!ell_) throw Error("ell map is only defined for nonhomogeneous problems");
    return *ell_;
}

BranchSet solve_homogeneous(const Problem& p, double x, double t) {
    if (!p.homogeneous()) {
        throw ConstructionError("solve_homogeneous requires f identically 0");
    }
    return Solver(p).solve(x, t);
}

BranchSet solve_nonhomogeneous(const Problem& p, double x, double t) {
    if (p.homogeneous()) {
        throw ConstructionError("solve_nonhomogeneous requires a nonzero source f");
    }
    return Solver(p).solve(x, t);
}

// ---------------------------------------------------------------------------
// Canonicalization (f -> unit source)
// ---------------------------------------------------------------------------

Canonical canonicalize(const Problem& p) {
    if (p.homogeneous()) {
        throw ConstructionError("canonicalize requires a nonzero source f");
    }
    Solver solver(p);
    PhiMap phi = solver.phi();
    ExprPtr g = substitute(p.g, p.params);
    auto g_hat = [phi, g](double v) { return eval(*g, "u", phi.inverse(v)); };
    return Canonical{phi, g_hat, phi.range()};
}

CanonicalSolver::CanonicalSolver(std::function<double(double)> g, ExprPtr h,
                                 const Bindings& params, Interval domain, double ref,
                                 double g_anchor, double tol, int n_scan, double root_tol)
    : g_(std::move(g)),
      h_(substitute(h, params)),
      domain_(domain),
      ref_(ref),
      anchor_(g_anchor),
      tol_(tol),
      root_tol_(root_tol),
      n_scan_(n_scan) {
    if (!domain_.contains(ref_)) {
        throw ConstructionError("canonical solver: reference point outside the domain");
    }
    // checkpoint ladder for G(u) = anchor + integral of g from ref
    constexpr int kLadder = 512;
    grid_.resize(kLadder + 1);
    for (int i = 0; i <= kLadder; ++i) {
        grid_[static_cast<std::size_t>(i)] = domain_.lo + domain_.width() * i / double(kLadder);
    }
    grid_.back() = domain_.hi;
    acc_.assign(grid_.size(), 0.0);
    double panel_tol = tol_ / kLadder;
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
        acc_[i + 1] = acc_[i] + integrate(g_, grid_[i], grid_[i + 1], panel_tol);
    }
    double raw = antiderivative(ref_) - anchor_;
    for (double& v : acc_) v -= raw;
}

double CanonicalSolver::antiderivative(double u) const {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - grid_.begin());
    if (idx >= grid_.size()) idx = grid_.size() - 1;
    if (idx > 0 && u - grid_[idx - 1] < grid_[idx] - u) --idx;
    return acc_[idx] + integrate(g_, grid_[idx], u, tol_);
}

BranchSet CanonicalSolver::solve(double x, double t) const {
    auto f = [this, x, t](double u) {
        return x - antiderivative(u) - eval(*h_, "s", t - u);
    };
    BranchSet out = find_all_roots(f, domain_, n_scan_, root_tol_);
    out.x = x;
    out.t = t;
    return out;
}

BranchSet solve_canonical(ExprPtr g, ExprPtr h, const Bindings& params, double x, double t,
                          Interval u_domain, double u_ref, double tol, int n_scan) {
    ExprPtr g_sub = substitute(g, params);
    auto g_eval = [g_sub](double u) { return eval(*g_sub, "u", u); };
    CanonicalSolver solver(g_eval, h, params, u_domain, u_ref, 0.0, tol, n_scan);
    return solver.solve(x, t);
}

// ---------------------------------------------------------------------------
// Characteristics
// ---------------------------------------------------------------------------

CharPath characteristic_trace(const Problem& p, double x0, double u0, double t_end, double dt) {
    if (!(dt > 0.0)) throw ConstructionError("characteristic_trace: dt must be positive");
    if (!(t_end > 0.0)) throw ConstructionError("characteristic_trace: t_end must be positive");
    ExprPtr f = substitute(p.f, p.params);
    ExprPtr g = substitute(p.g, p.params);

    CharPath path;
    path.dt = dt;
    path.samples.push_back({0.0, x0, u0});

    double t = 0.0, x = x0, u = u0;
    auto dx = [&g](double uu) { return eval(*g, "u", uu); };
    auto du = [&f](double uu) { return eval(*f, "u", uu); };
    while (t < t_end - 1e-15 * t_end) {
        double h = std::min(dt, t_end - t);
        try {
            double k1x = dx(u), k1u = du(u);
            double k2x = dx(u + 0.5 * h * k1u), k2u = du(u + 0.5 * h * k1u);
            double k3x = dx(u + 0.5 * h * k2u), k3u = du(u + 0.5 * h * k2u);
            double k4x = dx(u + h * k3u), k4u = du(u + h * k3u);
            double nx = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            double nu = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            if (!std::isfinite(nx) || !std::isfinite(nu)) {
                path.truncated = true;
                break;
            }
            x = nx;
            u = nu;
            t += h;
        } catch (const Error&) {
            path.truncated = true;
            break;
        }
        path.samples.push_back({t, x, u});
    }
    return path;
}

// ---------------------------------------------------------------------------
// Breaking time
// ---------------------------------------------------------------------------

std::optional<double> breaking_time(const Problem& p, Interval s_interval, int n_samples) {
    if (!p.homogeneous()) {
        throw ConstructionError("breaking_time requires f identically 0");
    }
    if (n_samples < 2) throw ConstructionError("breaking_time: n_samples must be at least 2");
    ExprPtr g = substitute(p.g, p.params);
    ExprPtr h = substitute(p.h, p.params);
    ExprPtr g_of_h = substitute(g, "u", h);        // g(h(s)) as an expression in s
    ExprPtr slope = differentiate(g_of_h, "s");    // DifferentiationError propagates (abs)

    double m = HUGE_VAL;
    int valid = 0;
    for (int i = 0; i <= n_samples; ++i) {
        double s = s_interval.lo + s_interval.width() * i / double(n_samples);
        try {
            double v = eval(*slope, "s", s);
            if (std::isfinite(v)) {
                m = std::min(m, v);
                ++valid;
            }
        } catch (const EvalDomainError&) {
        }
    }
    if (valid == 0) {
        throw ConstructionError("breaking_time: d/ds g(h(s)) not evaluable on the interval");
    }
    if (m >= 0.0) return std::nullopt;
    return -1.0 / m;
}

}  // namespace burgers
