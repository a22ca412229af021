#pragma once

namespace burgers {

// Branches of the Lambert W function (inverse of w -> w e^w).
//   principal: W0, defined for z >= -1/e
//   lower:     W-1, defined for -1/e <= z < 0
enum class WBranch { principal, lower };

// Halley iteration from a region-dependent initial guess; the result w
// satisfies |w e^w - z| <= 1e-12 * max(1, |z|). Throws EvalDomainError for
// arguments outside the branch domain.
double lambert_w(double z, WBranch branch = WBranch::principal);

}  // namespace burgers
