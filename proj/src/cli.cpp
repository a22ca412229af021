#include "burgers/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "burgers/problem_file.hpp"
#include "burgers/registry.hpp"
#include "burgers/verify.hpp"

namespace burgers::cli {

namespace {

struct AxisSpec {
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
};

AxisSpec parse_axis(const std::string& text) {
    AxisSpec spec;
    auto c1 = text.find(':');
    auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw Error("expected LO:HI:N, got '" + text + "'");
    }
    auto parse_part = [&](std::string_view part, double& out) {
        auto [next, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc{} || next != part.data() + part.size()) {
            throw Error("malformed number in '" + text + "'");
        }
    };
    double n_raw = 0.0;
    parse_part(std::string_view(text).substr(0, c1), spec.lo);
    parse_part(std::string_view(text).substr(c1 + 1, c2 - c1 - 1), spec.hi);
    parse_part(std::string_view(text).substr(c2 + 1), n_raw);
    if (n_raw < 2.0 || n_raw != static_cast<std::size_t>(n_raw)) {
        throw Error("N must be an integer >= 2 in '" + text + "'");
    }
    if (!(spec.lo < spec.hi)) throw Error("need LO < HI in '" + text + "'");
    spec.n = static_cast<std::size_t>(n_raw);
    return spec;
}

// Fixed CSV number format: shortest representation that parses back to the
// same double, via to_chars with 17 significant digits.
void append_number(std::string& out, double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    (void)ec;
    out.append(buf, end);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

int cmd_solve(const std::string& problem_path, const std::string& x_spec,
              const std::string& t_spec, const std::string& out_path) {
    Problem problem = load_problem_file(problem_path);
    Solver solver(problem);
    AxisSpec xa = parse_axis(x_spec);
    AxisSpec ta = parse_axis(t_spec);
    auto xs = linspace(xa.lo, xa.hi, xa.n);
    auto ts = linspace(ta.lo, ta.hi, ta.n);

    std::vector<BranchSet> nodes = solve_grid(solver, xs, ts);

    std::size_t max_branches = 1;
    for (const auto& bs : nodes) max_branches = std::max(max_branches, bs.roots.size());

    std::string csv;
    csv.reserve(nodes.size() * 64);
    csv += "x,t,branch_count";
    for (std::size_t i = 0; i < max_branches; ++i) {
        csv += ",u_" + std::to_string(i);
    }
    csv += ",converged\n";
    for (std::size_t it = 0; it < ts.size(); ++it) {
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            const BranchSet& bs = nodes[it * xs.size() + ix];
            append_number(csv, xs[ix]);
            csv.push_back(',');
            append_number(csv, ts[it]);
            csv.push_back(',');
            csv += std::to_string(bs.roots.size());
            bool all_converged = true;
            for (std::size_t k = 0; k < max_branches; ++k) {
                csv.push_back(',');
                if (k < bs.roots.size()) {
                    append_number(csv, bs.roots[k].u);
                    all_converged = all_converged && bs.roots[k].converged;
                }
            }
            csv.push_back(',');
            csv.push_back(all_converged ? '1' : '0');
            csv.push_back('\n');
        }
    }
    write_file(out_path, csv);
    return 0;
}

int cmd_residual(const std::string& problem_path, const std::optional<std::string>& claim,
                 bool from_solve, const std::string& x_spec, const std::string& t_spec,
                 double tol) {
    Problem problem = load_problem_file(problem_path);
    AxisSpec xa = parse_axis(x_spec);
    AxisSpec ta = parse_axis(t_spec);
    auto xs = linspace(xa.lo, xa.hi, xa.n);
    auto ts = linspace(ta.lo, ta.hi, ta.n);

    Field field;
    if (claim) {
        ExprPtr candidate = parse_expression(*claim);
        field = expression_field(candidate, problem.params, xs, ts);
    } else if (from_solve) {
        Solver solver(problem);
        field = solve_field(solver, xs, ts);
    } else {
        throw Error("residual: pass either --claim or --from-solve");
    }

    ResidualReport report = residual_field(problem, field, tol);
    std::printf("max|r| = %.17g\nmean|r| = %.17g\ninterior nodes = %zu\n%s (tol %.17g)\n",
                report.max_abs, report.mean_abs, report.interior_nodes,
                report.pass ? "PASS" : "FAIL", tol);
    return report.pass ? 0 : 2;
}

int cmd_breaking_time(const std::string& problem_path, const std::string& s_spec,
                      int n_samples) {
    Problem problem = load_problem_file(problem_path);
    auto colon = s_spec.find(':');
    if (colon == std::string::npos) throw Error("expected LO:HI for --s");
    double lo = 0.0, hi = 0.0;
    auto parse_part = [&](std::string_view part, double& out) {
        auto [next, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc{} || next != part.data() + part.size()) {
            throw Error("malformed number in '" + s_spec + "'");
        }
    };
    parse_part(std::string_view(s_spec).substr(0, colon), lo);
    parse_part(std::string_view(s_spec).substr(colon + 1), hi);
    if (!(lo < hi)) throw Error("need LO < HI for --s");

    std::optional<double> t_star = breaking_time(problem, {lo, hi}, n_samples);
    if (t_star) {
        std::printf("%.17g\n", *t_star);
    } else {
        std::printf("none\n");
    }
    return 0;
}

int cmd_phi_table(const std::string& problem_path, const std::string& u_spec,
                  const std::optional<std::string>& out_path) {
    Problem problem = load_problem_file(problem_path);
    if (problem.homogeneous()) {
        throw Error("phi-table: f is identically 0, so phi = integral of 1/f is undefined");
    }
    Solver solver(problem);
    AxisSpec ua = parse_axis(u_spec);

    std::string csv = "u,phi(u),ell(phi(u))\n";
    for (std::size_t i = 0; i < ua.n; ++i) {
        double u = ua.lo + (ua.hi - ua.lo) * static_cast<double>(i) /
                               static_cast<double>(ua.n - 1);
        append_number(csv, u);
        csv.push_back(',');
        append_number(csv, solver.phi()(u));
        csv.push_back(',');
        append_number(csv, solver.ell().at_phi_of(u));
        csv.push_back('\n');
    }
    if (out_path) {
        write_file(*out_path, csv);
    } else {
        std::fwrite(csv.data(), 1, csv.size(), stdout);
    }
    return 0;
}

int cmd_examples(const std::optional<std::string>& id) {
    bool found = false;
    bool all_ok = true;
    for (const auto& entry : example_registry()) {
        if (id && entry.id != *id) continue;
        found = true;
        ExampleResult result = run_example(entry);
        std::printf("%-28s %s\n", result.id.c_str(), result.detail.c_str());
        all_ok = all_ok && result.as_expected;
    }
    if (!found) {
        std::fprintf(stderr, "no example with id '%s'\n", id->c_str());
        return 1;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string program = "burgers";
    argv.push_back(program.data());
    for (auto& a : storage) argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
    CLI::App app{"exact solutions of u_t + g(u) u_x = f(u) by quadratures, with "
                 "residual and characteristics verification"};
    app.require_subcommand(1);

    std::string problem_path, x_spec, t_spec, out_path, s_spec, u_spec;
    std::optional<std::string> claim, maybe_out, example_id;
    bool from_solve = false;
    double tol = 1e-5;
    int n_samples = 4096;

    auto* solve = app.add_subcommand("solve", "solve a problem over an (x, t) window to CSV");
    solve->add_option("--problem", problem_path, "problem file")->required();
    solve->add_option("--x", x_spec, "x window LO:HI:N")->required();
    solve->add_option("--t", t_spec, "t window LO:HI:N")->required();
    solve->add_option("--out", out_path, "output CSV path")->required();

    auto* residual = app.add_subcommand(
        "residual", "check u_t + g(u) u_x - f(u) for a claimed or solved field");
    residual->add_option("--problem", problem_path, "problem file")->required();
    auto* claim_opt = residual->add_option("--claim", claim, "closed-form candidate in x, t");
    residual->add_flag("--from-solve", from_solve, "verify the implicit solver's own field")
        ->excludes(claim_opt);
    residual->add_option("--x", x_spec, "x window LO:HI:N")->required();
    residual->add_option("--t", t_spec, "t window LO:HI:N")->required();
    residual->add_option("--tol", tol, "pass/fail tolerance (default 1e-5)");

    auto* breaking = app.add_subcommand("breaking-time",
                                        "first gradient blow-up time of the homogeneous problem");
    breaking->add_option("--problem", problem_path, "problem file")->required();
    breaking->add_option("--s", s_spec, "profile-argument interval LO:HI")->required();
    breaking->add_option("--samples", n_samples, "sample count (default 4096)");

    auto* phi_table = app.add_subcommand("phi-table", "tabulate u, phi(u), ell(phi(u)) to CSV");
    phi_table->add_option("--problem", problem_path, "problem file")->required();
    phi_table->add_option("--u", u_spec, "u range LO:HI:N")->required();
    phi_table->add_option("--out", maybe_out, "output CSV path (default stdout)");

    auto* examples = app.add_subcommand("examples", "run the built-in example registry");
    examples->add_option("--id", example_id, "run a single entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(problem_path, x_spec, t_spec, out_path);
        if (residual->parsed()) {
            return cmd_residual(problem_path, claim, from_solve, x_spec, t_spec, tol);
        }
        if (breaking->parsed()) return cmd_breaking_time(problem_path, s_spec, n_samples);
        if (phi_table->parsed()) return cmd_phi_table(problem_path, u_spec, maybe_out);
        if (examples->parsed()) return cmd_examples(example_id);
    } catch (const ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace burgers::cli
