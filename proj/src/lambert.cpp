#include "burgers/lambert.hpp"

#include <cmath>
#include <string>

#include "burgers/errors.hpp"

namespace burgers {

namespace {

// Nearest double to 1/e; the branch point is z = -kInvE.
constexpr double kInvE = 0.36787944117144232160;
constexpr double kE = 2.71828182845904523536;
constexpr double kResidualTol = 1e-12;

// Initial guesses.
//  - Near the branch point both branches use the series in
//    p = sqrt(2 (1 + e z)):  W = -1 +- p - p^2/3 +- 11 p^3 / 72.
//  - W0 near 0 uses z (1 - z); the mid range bridges with log1p, and large z
//    uses the asymptotic ln z - ln ln z + ln ln z / ln z.
//  - W-1 toward 0- uses the asymptotic in l = ln(-z): l - ln(-l) + ln(-l)/l.

double guess_principal(double z) {
    if (z < -0.3235) {
        double p = std::sqrt(std::fmax(0.0, 2.0 * (1.0 + kE * z)));
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    }
    if (z < 0.3) return z * (1.0 - z);
    if (z < 3.0) return std::log1p(z);
    double l = std::log(z);
    double ll = std::log(l);
    return l - ll + ll / l;
}

double guess_lower(double z) {
    if (z < -0.27) {
        double p = std::sqrt(std::fmax(0.0, 2.0 * (1.0 + kE * z)));
        return -1.0 - p * (1.0 + p * (1.0 / 3.0 + p * (11.0 / 72.0)));
    }
    double l = std::log(-z);
    double nl = std::log(-l);
    return l - nl + nl / l;
}

double halley(double z, double w, bool principal) {
    double target = kResidualTol * std::fmax(1.0, std::fabs(z));
    double residual = HUGE_VAL;
    for (int iter = 0; iter < 50; ++iter) {
        double ew = std::exp(w);
        double f = w * ew - z;
        residual = std::fabs(f);
        if (residual <= 0.1 * target) break;
        double w1 = w + 1.0;
        double step = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1));
        double next = w - step;
        // keep iterates on the branch
        if (principal) {
            if (z < 0.0 && next >= 0.0) next = 0.5 * w;
            if (next < -1.0) next = 0.5 * (w - 1.0);
        } else {
            if (next > -1.0) next = 0.5 * (w - 1.0);
        }
        if (next == w) break;
        w = next;
        if (!std::isfinite(w)) {
            throw ConvergenceError("lambert_w: iteration left the real line", w);
        }
    }
    double check = std::fabs(w * std::exp(w) - z);
    if (check > target) {
        throw ConvergenceError("lambert_w: Halley iteration did not reach tolerance", w);
    }
    return w;
}

}  // namespace

double lambert_w(double z, WBranch branch) {
    if (std::isnan(z)) throw EvalDomainError("lambert_w: NaN argument");
    if (branch == WBranch::principal) {
        if (z < -kInvE) {
            throw EvalDomainError("lambert_w0: argument " + std::to_string(z) +
                                  " is below -1/e");
        }
        if (z == -kInvE) return -1.0;
        if (z == 0.0) return 0.0;
        return halley(z, guess_principal(z), true);
    }
    if (z < -kInvE || z >= 0.0) {
        throw EvalDomainError("lambert_wm1: argument " + std::to_string(z) +
                              " outside [-1/e, 0)");
    }
    if (z == -kInvE) return -1.0;
    return halley(z, guess_lower(z), false);
}

}  // namespace burgers
