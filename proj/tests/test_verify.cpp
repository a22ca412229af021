#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "burgers/verify.hpp"

using namespace burgers;

namespace {

Problem make_problem(const char* f, const char* g, const char* h, Bindings params = {}) {
    Problem p;
    p.f = parse_expression(f);
    p.g = parse_expression(g);
    p.h = parse_expression(h);
    p.params = std::move(params);
    return p;
}

}  // namespace

TEST_CASE("residual: rational solution passes at 1e-6 with 1e-3 spacing") {
    Problem p = make_problem("0", "u", "(a*s+b)/c", {{"a", 1.0}, {"b", 0.0}, {"c", 1.0}});
    Field field = expression_field(parse_expression("(a*x+b)/(a*t+c)"), p.params,
                                   linspace(0.0, 1.0, 1001), linspace(0.0, 1.0, 1001));
    ResidualReport report = residual_field(p, field, 1e-6);
    CHECK(report.pass);
    CHECK(report.max_abs < 1e-6);
    CHECK(report.interior_nodes == 999 * 999);
    CHECK(report.dx == doctest::Approx(1e-3));
}

TEST_CASE("residual: the zero field has zero residual for f = 0") {
    Problem p = make_problem("0", "u^2+1", "s");
    Field field = expression_field(parse_expression("0"), {}, linspace(0.0, 1.0, 21),
                                   linspace(0.0, 1.0, 21));
    ResidualReport report = residual_field(p, field, 1e-15);
    CHECK(report.pass);
    CHECK(report.max_abs == 0.0);
}

TEST_CASE("residual: the claimed quadratic-case solution fails with r(1,0) = 1/2") {
    Problem p = make_problem("u", "2*u", "exp(-s)");
    Field field = expression_field(parse_expression("x*(1+exp(-t))/2"), {},
                                   linspace(0.9, 1.1, 201), linspace(-0.05, 0.05, 101));
    ResidualReport report = residual_field(p, field, 1e-5);
    CHECK(!report.pass);
    // r = (x/2) e^(-2t): one half at (1, 0); node (100, 50) is that point
    CHECK(field.xs[100] == 1.0);
    CHECK(field.ts[50] == 0.0);
    CHECK(std::fabs(report.at(field, 50, 100) - 0.5) <= 1e-6);
}

TEST_CASE("residual: symbolic cross-check agrees with the analytic defect") {
    ExprPtr f = parse_expression("u");
    ExprPtr g = parse_expression("2*u");
    // the corrected solution has identically zero residual
    ExprPtr good = symbolic_residual(f, g, parse_expression("x/(2+exp(-t))"));
    for (double x : {0.5, 1.0, 2.0}) {
        for (double t : {0.0, 0.5, 1.0}) {
            CHECK(eval(*good, "x", x, "t", t) == doctest::Approx(0.0).epsilon(1e-14));
        }
    }
    // the claimed one reduces to (x/2) e^(-2t)
    ExprPtr bad = symbolic_residual(f, g, parse_expression("x*(1+exp(-t))/2"));
    for (double x : {0.5, 1.0, 2.0}) {
        for (double t : {-0.3, 0.0, 0.7}) {
            double expected = 0.5 * x * std::exp(-2.0 * t);
            CHECK(eval(*bad, "x", x, "t", t) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("residual: failure verdict is stable under grid refinement") {
    Problem p = make_problem("u", "2*u", "exp(-s)");
    ExprPtr claim = parse_expression("x*(1+exp(-t))/2");
    Field coarse = expression_field(claim, {}, linspace(0.5, 1.5, 101),
                                    linspace(-0.25, 0.25, 101));
    Field fine = expression_field(claim, {}, linspace(0.5, 1.5, 401),
                                  linspace(-0.25, 0.25, 401));
    ResidualReport rc = residual_field(p, coarse, 1e-5);
    ResidualReport rf = residual_field(p, fine, 1e-5);
    CHECK(!rc.pass);
    CHECK(!rf.pass);
    // a wrong solution keeps its residual; discretization error would shrink 16x
    CHECK(rf.max_abs > 0.9 * rc.max_abs);
}

TEST_CASE("residual: solver-produced fields pass at the grid-scaled tolerance") {
    Problem p = make_problem("0", "u", "(a*s+b)/c", {{"a", 1.0}, {"b", 0.0}, {"c", 1.0}});
    p.u_domain = Interval{-5.0, 5.0};
    p.n_scan = 128;
    Solver solver(p);
    Field field = solve_field(solver, linspace(0.0, 1.0, 101), linspace(0.0, 1.0, 101));
    CHECK(field.invalid_count() == 0);
    double scale = 1.0;  // O(1) solution
    double delta = 0.01;
    double tol = std::fmax(1e-5, 10.0 * delta * delta * scale);
    ResidualReport report = residual_field(p, field, tol);
    CHECK(report.pass);
}

TEST_CASE("residual: degenerate inputs are rejected") {
    Problem p = make_problem("0", "u", "s");
    Field tiny = expression_field(parse_expression("x"), {}, linspace(0.0, 1.0, 2),
                                  linspace(0.0, 1.0, 5));
    CHECK_THROWS_AS(residual_field(p, tiny, 1e-5), Error);

    // all nodes invalid -> empty report error
    Field invalid = expression_field(parse_expression("sqrt(-1-x^2)"), {},
                                     linspace(0.0, 1.0, 9), linspace(0.0, 1.0, 9));
    CHECK(invalid.invalid_count() == 81);
    CHECK_THROWS_AS(residual_field(p, invalid, 1e-5), Error);
}

TEST_CASE("residual: invalid nodes knock out their neighbours only") {
    Problem p = make_problem("0", "1", "s");
    // u = x - t solves u_t + u_x = 0; sqrt invalidates nodes with x < t
    Field field = expression_field(parse_expression("x-t+sqrt(x-t)-sqrt(x-t)"), {},
                                   linspace(0.0, 1.0, 41), linspace(0.0, 1.0, 41));
    CHECK(field.invalid_count() > 0);
    ResidualReport report = residual_field(p, field, 1e-8);
    CHECK(report.pass);
    CHECK(report.interior_nodes > 400);
    CHECK(report.interior_nodes < 39 * 39);
}

TEST_CASE("verify_canonical: f = 1 reproduces the plain residual") {
    Problem p = make_problem("1", "u^2", "s");
    p.u_domain = Interval{-3.0, 3.0};
    p.u_ref = 0.0;  // phi(u) = u
    Solver solver(p);
    Canonical canonical = canonicalize(p);
    // a deliberately wrong field: defects of both routes must agree nodewise
    Field field = expression_field(parse_expression("t+0.1*sin(x)"), {},
                                   linspace(0.0, 1.0, 41), linspace(0.0, 1.0, 41));
    ResidualReport direct = residual_field(p, field, 1e-5);
    ResidualReport canon = verify_canonical(solver.phi(), canonical.g_hat, field, 1e-5);
    REQUIRE(direct.residuals.size() == canon.residuals.size());
    for (std::size_t i = 0; i < direct.residuals.size(); ++i) {
        if (std::isnan(direct.residuals[i])) continue;
        CHECK(std::fabs(direct.residuals[i] - canon.residuals[i]) <= 1e-9);
    }
}

TEST_CASE("verify_canonical: the W0 solution satisfies the unit-source equation") {
    PhiMap phi(parse_expression("exp(u)"), {}, 0.0, {-4.0, 4.0}, 1e-10, -1.0);
    auto g_hat = [](double v) { return -std::log(-v); };  // g o phi^{-1} in closed form
    Field u_field = expression_field(parse_expression("-lambertw0(x-t)"), {},
                                     linspace(1.5, 3.0, 1501), linspace(0.0, 1.0, 1001));
    ResidualReport report = verify_canonical(phi, g_hat, u_field, 1e-5);
    CHECK(report.pass);
}

TEST_CASE("verify_canonical: constant fields fail with residual one") {
    PhiMap phi(parse_expression("1"), {}, 0.0, {-3.0, 3.0}, 1e-10);
    auto g_hat = [](double) { return 1.0; };
    Field field = expression_field(parse_expression("0.5"), {}, linspace(0.0, 1.0, 11),
                                   linspace(0.0, 1.0, 11));
    ResidualReport report = verify_canonical(phi, g_hat, field, 1e-5);
    CHECK(!report.pass);
    CHECK(report.max_abs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.mean_abs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convergence order: halving the spacing divides the residual by ~4") {
    Problem p = make_problem("0", "u", "(a*s+b)/c", {{"a", 1.3}, {"b", 0.4}, {"c", 1.1}});
    ExprPtr closed = parse_expression("(a*x+b)/(a*t+c)");
    Field coarse = expression_field(closed, p.params, linspace(0.2, 1.0, 101),
                                    linspace(0.0, 1.0, 101));
    Field fine = expression_field(closed, p.params, linspace(0.2, 1.0, 201),
                                  linspace(0.0, 1.0, 201));
    ResidualReport rc = residual_field(p, coarse, 1.0);
    ResidualReport rf = residual_field(p, fine, 1.0);
    double ratio = rc.max_abs / rf.max_abs;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}
