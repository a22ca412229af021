#include "burgers/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/rootfind.hpp"

namespace burgers {

namespace {

// Cumulative checkpoint ladder for an antiderivative: out[i] holds the
// integral of fn from grid[0] to grid[i]. Per-panel tolerance is divided by
// the panel count so the accumulated error stays within tol overall.
template <class F>
void build_ladder(F&& fn, const std::vector<double>& grid, double tol,
                  std::vector<double>& out) {
    out.assign(grid.size(), 0.0);
    double panel_tol = tol / static_cast<double>(grid.size());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out[i + 1] = out[i] + integrate(fn, grid[i], grid[i + 1], panel_tol);
    }
}

std::vector<double> uniform_grid(Interval iv, int panels) {
    std::vector<double> grid(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
        grid[static_cast<std::size_t>(i)] =
            iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(panels);
    }
    grid.back() = iv.hi;
    return grid;
}

// Integrate from the nearest checkpoint at or below/above u.
template <class F>
double from_ladder(const std::vector<double>& grid, const std::vector<double>& acc, double u,
                   F&& fn, double tol) {
    auto it = std::lower_bound(grid.begin(), grid.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - grid.begin());
    if (idx >= grid.size()) idx = grid.size() - 1;
    if (idx > 0 && u - grid[idx - 1] < grid[idx] - u) --idx;
    return acc[idx] + integrate(fn, grid[idx], u, tol);
}

}  // namespace

// ---------------------------------------------------------------------------
// PhiMap
// ---------------------------------------------------------------------------

PhiMap::PhiMap(ExprPtr f, const Bindings& params, double u_ref, Interval domain, double tol,
               double phi_at_ref)
    : f_(substitute(f, params)), domain_(domain), u_ref_(u_ref), tol_(tol) {
    if (!(domain.lo < domain.hi)) {
        throw ConstructionError("phi map: empty domain");
    }
    if (!domain.contains(u_ref)) {
        throw ConstructionError("phi map: u_ref outside the domain");
    }

    // f must keep one nonzero sign on the whole domain; dense sampling is the
    // only general check for an arbitrary expression (heuristic, documented).
    constexpr int kSignSamples = 2048;
    double first = 0.0;
    for (int i = 0; i <= kSignSamples; ++i) {
        double u = domain.lo + domain.width() * static_cast<double>(i) /
                                   static_cast<double>(kSignSamples);
        double v = eval(*f_, "u", u);
        if (!std::isfinite(v) || v == 0.0 || (i > 0 && std::signbit(v) != std::signbit(first))) {
            throw ConstructionError("phi map: f(u) must be finite with one nonzero sign; f(" +
                                    std::to_string(u) + ") = " + std::to_string(v));
        }
        if (i == 0) first = v;
    }
    sign_ = first > 0.0 ? 1.0 : -1.0;

    grid_ = uniform_grid(domain, kLadder);
    auto integrand = [this](double u) { return 1.0 / eval(*f_, "u", u); };
    build_ladder(integrand, grid_, tol_, phi_);

    // shift so that phi(u_ref) = phi_at_ref
    double raw_ref = checkpoint_eval(u_ref);
    double shift = phi_at_ref - raw_ref;
    for (double& v : phi_) v += shift;
}

double PhiMap::f_at(double u) const { return eval(*f_, "u", u); }

double PhiMap::checkpoint_eval(double u) const {
    auto integrand = [this](double x) { return 1.0 / eval(*f_, "u", x); };
    auto it = std::lower_bound(grid_.begin(), grid_.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - grid_.begin());
    if (idx >= grid_.size()) idx = grid_.size() - 1;
    if (idx > 0 && u - grid_[idx - 1] < grid_[idx] - u) --idx;
    double base = phi_.empty() ? 0.0 : phi_[idx];
    return base + integrate(integrand, grid_[idx], u, tol_);
}

double PhiMap::operator()(double u) const {
    double slack = 1e-12 * (std::fabs(domain_.width()) + 1.0);
    if (u < domain_.lo - slack || u > domain_.hi + slack) {
        throw RangeError("phi map: argument " + std::to_string(u) + " outside the domain",
                         domain_.lo, domain_.hi);
    }
    return checkpoint_eval(std::clamp(u, domain_.lo, domain_.hi));
}

Interval PhiMap::range() const {
    double a = phi_.front();
    double b = phi_.back();
    return a <= b ? Interval{a, b} : Interval{b, a};
}

double PhiMap::inverse(double v) const {
    Interval rng = range();
    double slack = 1e-9 * (rng.width() + 1.0);
    if (v < rng.lo - slack || v > rng.hi + slack) {
        throw RangeError("phi map: value " + std::to_string(v) + " outside the attained range [" +
                             std::to_string(rng.lo) + ", " + std::to_string(rng.hi) + "]",
                         rng.lo, rng.hi);
    }
    v = std::clamp(v, rng.lo, rng.hi);

    // bracket from the (monotone) ladder, then safeguarded Newton with the
    // exact derivative phi' = 1/f
    std::size_t lo = 0, hi = grid_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        bool below = increasing() ? phi_[mid] <= v : phi_[mid] >= v;
        if (below) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    auto f = [this, v](double u) { return checkpoint_eval(u) - v; };
    auto df = [this](double u) { return 1.0 / eval(*f_, "u", u); };
    return find_root(f, df, grid_[lo], grid_[hi], 1e-13);
}

PhiMap build_phi_map(ExprPtr f, const Bindings& params, double u_ref, Interval domain, double tol,
                     double phi_at_ref) {
    return PhiMap(std::move(f), params, u_ref, domain, tol, phi_at_ref);
}

double phi_inverse(const PhiMap& map, double v) { return map.inverse(v); }

// ---------------------------------------------------------------------------
// EllMap
// ---------------------------------------------------------------------------

EllMap::EllMap(ExprPtr g, const Bindings& params, PhiMap phi, double v_ref, double tol,
               double ell_at_ref)
    : g_(substitute(g, params)), phi_(std::move(phi)), v_ref_(v_ref), tol_(tol) {
    Interval rng = phi_.range();
    if (!rng.contains(v_ref)) {
        throw RangeError("ell map: v_ref outside the attained range of phi", rng.lo, rng.hi);
    }

    // v-ladder: integrate g(phi^{-1}(w)) over the range of phi
    vgrid_ = uniform_grid(rng, kLadder);
    auto ghat = [this](double w) { return eval(*g_, "u", phi_.inverse(w)); };
    build_ladder(ghat, vgrid_, tol_, ell_);

    // u-ladder: d/du ell(phi(u)) = g(u)/f(u)
    ugrid_ = uniform_grid(phi_.domain(), kLadder);
    auto gofu = [this](double u) { return eval(*g_, "u", u) / phi_.f_at(u); };
    build_ladder(gofu, ugrid_, tol_, lofu_);

    // anchor both ladders: ell(v_ref) = ell_at_ref
    double raw_v = from_ladder(vgrid_, ell_, v_ref, ghat, tol_);
    double shift_v = ell_at_ref - raw_v;
    for (double& v : ell_) v += shift_v;

    double u_star = phi_.inverse(v_ref);
    double raw_u = from_ladder(ugrid_, lofu_, u_star, gofu, tol_);
    double shift_u = ell_at_ref - raw_u;
    for (double& v : lofu_) v += shift_u;
}

double EllMap::operator()(double v) const {
    Interval rng = phi_.range();
    double slack = 1e-9 * (rng.width() + 1.0);
    if (v < rng.lo - slack || v > rng.hi + slack) {
        throw RangeError("ell map: value outside the attained range of phi", rng.lo, rng.hi);
    }
    auto ghat = [this](double w) { return eval(*g_, "u", phi_.inverse(w)); };
    return from_ladder(vgrid_, ell_, std::clamp(v, rng.lo, rng.hi), ghat, tol_);
}

double EllMap::at_phi_of(double u) const {
    const Interval& dom = phi_.domain();
    double slack = 1e-12 * (std::fabs(dom.width()) + 1.0);
    if (u < dom.lo - slack || u > dom.hi + slack) {
        throw RangeError("ell map: argument outside the domain of phi", dom.lo, dom.hi);
    }
    auto gofu = [this](double x) { return eval(*g_, "u", x) / phi_.f_at(x); };
    return from_ladder(ugrid_, lofu_, std::clamp(u, dom.lo, dom.hi), gofu, tol_);
}

double EllMap::g_hat(double v) const { return eval(*g_, "u", phi_.inverse(v)); }

EllMap build_ell(ExprPtr g, const Bindings& params, const PhiMap& map, double v_ref, double tol,
                 double ell_at_ref) {
    return EllMap(std::move(g), params, map, v_ref, tol, ell_at_ref);
}

// ---------------------------------------------------------------------------
// Closed-form ell for the power-law family
// ---------------------------------------------------------------------------

ExprPtr ell_closed_form(int m, int n) {
    ExprPtr u = Expr::variable("u");
    double md = static_cast<double>(m);
    double nd = static_cast<double>(n);
    if (n == 1 && m == 1) {
        return Expr::call(Func::exp, u);
    }
    if (n == m && n != 1) {
        // (m/(1-m)) ln((1-m) u)
        return Expr::multiply(
            Expr::constant(md / (1.0 - md)),
            Expr::call(Func::ln, Expr::multiply(Expr::constant(1.0 - md), u)));
    }
    if (n == 1 && m != 1) {
        // (m/(m-1)) exp((m-1) u)
        return Expr::multiply(
            Expr::constant(md / (md - 1.0)),
            Expr::call(Func::exp, Expr::multiply(Expr::constant(md - 1.0), u)));
    }
    if (n > 1 && n != m) {
        // (m/(m-n)) ((1-n) u)^((n-m)/(n-1)), valid where (1-n) u > 0
        return Expr::multiply(
            Expr::constant(md / (md - nd)),
            Expr::power(Expr::multiply(Expr::constant(1.0 - nd), u),
                        Expr::constant((nd - md) / (nd - 1.0))));
    }
    throw ConstructionError("ell_closed_form: pair (m=" + std::to_string(m) +
                            ", n=" + std::to_string(n) + ") is not covered by the table");
}

}  // namespace burgers
