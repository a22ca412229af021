#pragma once

#include <functional>
#include <vector>

#include "burgers/expr.hpp"
#include "burgers/field.hpp"
#include "burgers/rootfind.hpp"
#include "burgers/solver.hpp"

namespace burgers {

// Grid sweeps come in an OpenMP kernel and a serial reference; both drive the
// same per-node work, so their outputs are bit-identical and the serial path
// doubles as the correctness reference in tests and the baseline in the
// benchmark. `openmp` silently degrades to serial when built without OpenMP.
enum class Execution { serial, openmp };

Execution default_execution();

// How to reduce a BranchSet to the single value a Field stores per node.
//   single_only: valid only where exactly one converged root exists
//   lowest / highest: smallest / largest converged root (shock regions keep
//   both sheets; these select one)
enum class BranchSelect { single_only, lowest, highest };

struct SolveGridOptions {
    BranchSelect branch = BranchSelect::single_only;
    Execution exec = Execution::openmp;
};

// Implicit-solve u at every (x, t) node.
Field solve_field(const Solver& solver, std::vector<double> xs, std::vector<double> ts,
                  const SolveGridOptions& options = {});

// Full branch sets per node (row-major), for CSV output.
std::vector<BranchSet> solve_grid(const Solver& solver, const std::vector<double>& xs,
                                  const std::vector<double>& ts,
                                  Execution exec = Execution::openmp);

// Sample a closed-form candidate u(x, t); nodes where evaluation leaves a
// primitive's domain are marked invalid.
Field expression_field(const ExprPtr& u_of_xt, const Bindings& params, std::vector<double> xs,
                       std::vector<double> ts, Execution exec = Execution::openmp);

// Nodewise transform of a field (e.g. v = phi(u)); errors invalidate nodes.
Field map_field(const Field& in, const std::function<double(double)>& fn,
                Execution exec = Execution::openmp);

namespace detail {
// Shared loop driver: fn(i) for i in [0, n). The OpenMP path uses a dynamic
// schedule since per-node cost varies wildly across a shock region.
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& fn);
}  // namespace detail

}  // namespace burgers
