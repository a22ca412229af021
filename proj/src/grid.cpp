#include "burgers/grid.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace burgers {

Execution default_execution() {
#ifdef _OPENMP
    return Execution::openmp;
#else
    return Execution::serial;
#endif
}

namespace detail {

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
    if (exec == Execution::openmp) {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace detail

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Reduce one branch set to a single node value per the selection policy.
bool select_branch(const BranchSet& bs, BranchSelect mode, double& out) {
    std::size_t converged = 0;
    const RootRecord* lo = nullptr;
    const RootRecord* hi = nullptr;
    for (const auto& r : bs.roots) {
        if (!r.converged) continue;
        ++converged;
        if (!lo) lo = &r;
        hi = &r;
    }
    if (converged == 0) return false;
    switch (mode) {
        case BranchSelect::single_only:
            if (converged != 1) return false;
            out = lo->u;
            return true;
        case BranchSelect::lowest: out = lo->u; return true;
        case BranchSelect::highest: out = hi->u; return true;
    }
    return false;
}

}  // namespace

Field solve_field(const Solver& solver, std::vector<double> xs, std::vector<double> ts,
                  const SolveGridOptions& options) {
    Field field;
    field.xs = std::move(xs);
    field.ts = std::move(ts);
    field.provenance = Field::Provenance::implicit_solve;
    std::size_t n = field.nx() * field.nt();
    field.u.assign(n, kNaN);
    field.valid.assign(n, 0);
    field.check_axes();

    const std::size_t nx = field.nx();
    detail::for_each_index(n, options.exec, [&](std::size_t idx) {
        double x = field.xs[idx % nx];
        double t = field.ts[idx / nx];
        try {
            BranchSet bs = solver.solve(x, t);
            double value;
            if (select_branch(bs, options.branch, value)) {
                field.u[idx] = value;
                field.valid[idx] = 1;
            }
        } catch (const Error&) {
            // node stays invalid
        }
    });
    return field;
}

std::vector<BranchSet> solve_grid(const Solver& solver, const std::vector<double>& xs,
                                  const std::vector<double>& ts, Execution exec) {
    std::vector<BranchSet> out(xs.size() * ts.size());
    const std::size_t nx = xs.size();
    detail::for_each_index(out.size(), exec, [&](std::size_t idx) {
        out[idx] = solver.solve(xs[idx % nx], ts[idx / nx]);
    });
    return out;
}

Field expression_field(const ExprPtr& u_of_xt, const Bindings& params, std::vector<double> xs,
                       std::vector<double> ts, Execution exec) {
    Field field;
    field.xs = std::move(xs);
    field.ts = std::move(ts);
    field.provenance = Field::Provenance::closed_form;
    std::size_t n = field.nx() * field.nt();
    field.u.assign(n, kNaN);
    field.valid.assign(n, 0);
    field.check_axes();

    ExprPtr expr = substitute(u_of_xt, params);
    const std::size_t nx = field.nx();
    detail::for_each_index(n, exec, [&](std::size_t idx) {
        try {
            double v = eval(*expr, "x", field.xs[idx % nx], "t", field.ts[idx / nx]);
            if (std::isfinite(v)) {
                field.u[idx] = v;
                field.valid[idx] = 1;
            }
        } catch (const Error&) {
        }
    });
    return field;
}

Field map_field(const Field& in, const std::function<double(double)>& fn, Execution exec) {
    Field out = in;
    detail::for_each_index(out.u.size(), exec, [&](std::size_t idx) {
        if (!in.valid[idx]) return;
        try {
            double v = fn(in.u[idx]);
            if (std::isfinite(v)) {
                out.u[idx] = v;
            } else {
                out.u[idx] = kNaN;
                out.valid[idx] = 0;
            }
        } catch (const Error&) {
            out.u[idx] = kNaN;
            out.valid[idx] = 0;
        }
    });
    return out;
}

}  // namespace burgers
