#pragma once

#include <string>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/solver.hpp"

namespace burgers {

// Built-in worked examples. Each entry carries a Problem, a closed-form
// reference in (x, t), the window it is checked on, and the expected verdict:
// `pass` entries must clear the residual oracle and (when enabled) coincide
// with the implicit solver; the `known_discrepancy` entry is a published
// closed form that fails the PDE by a grid-independent residual and is kept
// as a negative control.
struct ExampleEntry {
    enum class Expect { pass, known_discrepancy };

    std::string id;
    std::string note;
    Problem problem;
    ExprPtr closed_form;
    Interval x_window, t_window;
    std::size_t residual_nx = 501, residual_nt = 501;
    std::size_t match_nx = 41, match_nt = 41;
    double residual_tol = 1e-5;
    double match_tol = 1e-7;
    BranchSelect branch = BranchSelect::single_only;
    bool compare_solver = true;
    Expect expect = Expect::pass;
};

const std::vector<ExampleEntry>& example_registry();

struct ExampleResult {
    std::string id;
    bool as_expected = false;
    std::string detail;
};

ExampleResult run_example(const ExampleEntry& entry, Execution exec = Execution::openmp);

}  // namespace burgers
