#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/interval.hpp"

namespace burgers {

struct RootRecord {
    double u = 0.0;
    double f_abs = 0.0;      // |F(u)| at the returned point
    bool converged = false;  // |F(u)| <= tol
};

// All roots of a scalar implicit equation found on a scan interval, in
// strictly increasing order. `marginal` holds tangency candidates (local
// minima of |F| polished below sqrt(tol)) which mark shock onset; they are
// never merged into `roots`. Cardinality 0 means no sign change was seen at
// the scan resolution, not that no root exists. `skipped` counts
// subintervals lost to evaluation-domain errors or non-finite samples.
struct BranchSet {
    double x = 0.0, t = 0.0;
    std::vector<RootRecord> roots;
    std::vector<RootRecord> marginal;
    Interval scan{0.0, 0.0};
    int n_scan = 0;
    int skipped = 0;

    bool contains(double u, double tol) const {
        for (const auto& r : roots) {
            if (std::fabs(r.u - u) <= tol) return true;
        }
        return false;
    }

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(roots.size());
        for (const auto& r : roots) v.push_back(r.u);
        return v;
    }
};

namespace detail {

// Safeguarded secant: the secant step is taken only when it lands strictly
// inside the current bracket, otherwise bisection. Endpoint values are
// supplied by the caller and must have opposite signs.
template <class F>
double bracketed_secant(F& f, double a, double fa, double b, double fb, double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double best_u = std::fabs(fa) < std::fabs(fb) ? a : b;
    double best_f = std::fmin(std::fabs(fa), std::fabs(fb));
    for (int iter = 0; iter < 160; ++iter) {
        double mid = 0.5 * (a + b);
        double cand = fb != fa ? b - fb * (b - a) / (fb - fa) : mid;
        double lo = std::fmin(a, b), hi = std::fmax(a, b);
        if (!(cand > lo && cand < hi)) cand = mid;
        double fc = f(cand);
        if (std::fabs(fc) < best_f) {
            best_f = std::fabs(fc);
            best_u = cand;
        }
        if (fc == 0.0) return cand;
        if (std::signbit(fc) == std::signbit(fa)) {
            a = cand;
            fa = fc;
        } else {
            b = cand;
            fb = fc;
        }
        double width_tol =
            std::fmax(tol * std::fmax(1.0, std::fabs(cand)), 4.0 * 2.22e-16 * std::fabs(cand));
        if (std::fabs(b - a) <= width_tol && best_f <= tol) break;
        if (std::fabs(b - a) <= 2.0 * 2.22e-16 * std::fmax(1.0, std::fabs(cand))) break;
    }
    return best_u;
}

}  // namespace detail

// Root of F on a bracket [a, b] with F(a) F(b) <= 0. Terminates when
// |F(u)| <= tol or the bracket width drops to tol * max(1, |u|).
template <class F>
double find_root(F&& f, double a, double b, double tol) {
    if (a > b) std::swap(a, b);
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        throw BracketError("find_root: non-finite value at a bracket endpoint");
    }
    if (fa != 0.0 && fb != 0.0 && std::signbit(fa) == std::signbit(fb)) {
        throw BracketError("find_root: endpoints do not bracket a sign change");
    }
    return detail::bracketed_secant(f, a, fa, b, fb, tol);
}

// Newton within a bracket, falling back to bisection whenever the Newton
// step leaves the bracket. Used where the exact derivative is available
// (e.g. inverting phi, whose derivative is 1/f).
template <class F, class DF>
double find_root(F&& f, DF&& df, double a, double b, double tol) {
    if (a > b) std::swap(a, b);
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        throw BracketError("find_root: non-finite value at a bracket endpoint");
    }
    if (fa != 0.0 && fb != 0.0 && std::signbit(fa) == std::signbit(fb)) {
        throw BracketError("find_root: endpoints do not bracket a sign change");
    }
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double u = 0.5 * (a + b);
    for (int iter = 0; iter < 120; ++iter) {
        double fu = f(u);
        if (fu == 0.0) return u;
        if (std::signbit(fu) == std::signbit(fa)) {
            a = u;
            fa = fu;
        } else {
            b = u;
            fb = fu;
        }
        double d = df(u);
        double next = d != 0.0 ? u - fu / d : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        double step = std::fabs(next - u);
        u = next;
        if (step <= tol * std::fmax(1.0, std::fabs(u))) break;
    }
    return u;
}

// Scans [iv.lo, iv.hi] at n_scan subintervals, solving every sign-change
// subinterval and polishing local minima of |F| as tangency candidates.
// Roots closer together than 10*tol are deduplicated (the one with the
// smaller residual wins). Deterministic: identical inputs give identical
// BranchSets.
template <class F>
BranchSet find_all_roots(F&& f, Interval iv, int n_scan, double tol) {
    if (n_scan < 2) throw Error("find_all_roots: n_scan must be at least 2");
    BranchSet out;
    out.scan = iv;
    out.n_scan = n_scan;

    std::size_t n = static_cast<std::size_t>(n_scan);
    std::vector<double> u(n + 1), val(n + 1);
    std::vector<char> ok(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        u[i] = iv.lo + iv.width() * static_cast<double>(i) / static_cast<double>(n);
        try {
            double v = f(u[i]);
            if (std::isfinite(v)) {
                val[i] = v;
                ok[i] = 1;
            }
        } catch (const EvalDomainError&) {
        } catch (const UnboundNameError&) {
        } catch (const RangeError&) {
        } catch (const ConvergenceError&) {
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i] || !ok[i + 1]) {
            ++out.skipped;
            continue;
        }
        bool crossing = (val[i] == 0.0) || (val[i + 1] == 0.0) ||
                        (std::signbit(val[i]) != std::signbit(val[i + 1]));
        if (!crossing) continue;
        RootRecord rec;
        if (val[i] == 0.0) {
            rec = {u[i], 0.0, true};
        } else if (val[i + 1] == 0.0) {
            rec = {u[i + 1], 0.0, true};
        } else {
            try {
                double r = detail::bracketed_secant(f, u[i], val[i], u[i + 1], val[i + 1], tol);
                double fr = std::fabs(f(r));
                rec = {r, fr, fr <= tol};
            } catch (const Error&) {
                ++out.skipped;
                continue;
            }
        }
        if (!out.roots.empty() && std::fabs(rec.u - out.roots.back().u) <= 10.0 * tol) {
            if (rec.f_abs < out.roots.back().f_abs) out.roots.back() = rec;
        } else {
            out.roots.push_back(rec);
        }
    }

    // Tangency candidates: polish interior local minima of |F| that sit on a
    // constant-sign plateau, flag those whose polished value falls below
    // sqrt(tol). Capped to bound the work on oscillatory functions.
    double marginal_gate = std::sqrt(tol);
    int polished = 0;
    for (std::size_t i = 1; i < n && polished < 32; ++i) {
        if (!ok[i - 1] || !ok[i] || !ok[i + 1]) continue;
        if (val[i - 1] == 0.0 || val[i] == 0.0 || val[i + 1] == 0.0) continue;
        if (std::signbit(val[i - 1]) != std::signbit(val[i]) ||
            std::signbit(val[i]) != std::signbit(val[i + 1])) {
            continue;
        }
        if (std::fabs(val[i]) > std::fabs(val[i - 1]) || std::fabs(val[i]) > std::fabs(val[i + 1]))
            continue;
        if (std::fabs(val[i]) >= std::fabs(val[i - 1]) && std::fabs(val[i]) >= std::fabs(val[i + 1]))
            continue;  // flat plateau, nothing to polish
        ++polished;
        // golden-section minimization of |F| on [u[i-1], u[i+1]]
        double lo = u[i - 1], hi = u[i + 1];
        constexpr double kGolden = 0.6180339887498949;
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        double f1, f2;
        try {
            f1 = std::fabs(f(x1));
            f2 = std::fabs(f(x2));
            for (int it = 0; it < 80 && hi - lo > 1e-13 * (std::fabs(lo) + 1.0); ++it) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - kGolden * (hi - lo);
                    f1 = std::fabs(f(x1));
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + kGolden * (hi - lo);
                    f2 = std::fabs(f(x2));
                }
            }
        } catch (const Error&) {
            continue;
        }
        double um = f1 < f2 ? x1 : x2;
        double fm = std::fmin(f1, f2);
        if (fm < marginal_gate) {
            bool near_root = false;
            for (const auto& r : out.roots) {
                if (std::fabs(r.u - um) <= 10.0 * tol) near_root = true;
            }
            if (!near_root) out.marginal.push_back({um, fm, fm <= tol});
        }
    }
    return out;
}

}  // namespace burgers
