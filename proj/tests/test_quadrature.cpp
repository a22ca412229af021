#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "burgers/quadrature.hpp"

using namespace burgers;

TEST_CASE("integrate: constants, 1/u, exp(-u)") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // closed-form antiderivative ln u as the oracle
    CHECK(integrate([](double u) { return 1.0 / u; }, 1.0, 2.0, 1e-12) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-11));
    CHECK(integrate([](double u) { return std::exp(-u); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-11));
}

TEST_CASE("integrate: orientation and empty interval") {
    auto fn = [](double u) { return u * u; };
    CHECK(integrate(fn, 2.0, 2.0, 1e-12) == 0.0);
    CHECK(integrate(fn, 1.0, 0.0, 1e-12) ==
          doctest::Approx(-integrate(fn, 0.0, 1.0, 1e-12)).epsilon(1e-14));
}

TEST_CASE("integrate: depth exhaustion carries the partial estimate") {
    // a step at an irrational point can never meet a 1e-14 tolerance
    auto step = [](double u) { return u < 0.707106781186547 ? 0.0 : 1.0; };
    try {
        integrate(step, 0.0, 1.0, 1e-14);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.partial() == doctest::Approx(1.0 - 0.707106781186547).epsilon(1e-6));
    }
}

TEST_CASE("integrate: non-finite samples are rejected") {
    CHECK_THROWS_AS(integrate([](double u) { return 1.0 / u; }, -1.0, 1.0, 1e-10),
                    EvalDomainError);
}

TEST_CASE("phi map: f = e^u anchored at 0") {
    PhiMap map(parse_expression("exp(u)"), {}, 0.0, {-3.0, 3.0}, 1e-10);
    // phi(u) = 1 - e^(-u); phi(1) = 1 - 1/e
    CHECK(map(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK(map(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(map.increasing());
}

TEST_CASE("phi map: f = 1 is a shift") {
    PhiMap map(parse_expression("1"), {}, 0.5, {-5.0, 5.0}, 1e-10);
    CHECK(map(2.0) == doctest::Approx(1.5).epsilon(1e-11));
    CHECK(map.inverse(1.5) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("phi map: f = u^2 on the positive half-line") {
    PhiMap map(parse_expression("u^2"), {}, 1.0, {0.1, 10.0}, 1e-10);
    // phi(u) = 1 - 1/u
    CHECK(map(2.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(map(0.5) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("phi map: sign change in f is a construction error") {
    try {
        PhiMap map(parse_expression("u"), {}, 0.5, {-1.0, 1.0}, 1e-10);
        FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("f(") != std::string::npos);
    }
    CHECK_THROWS_AS(PhiMap(parse_expression("u"), {}, 20.0, {0.1, 10.0}, 1e-10),
                    ConstructionError);
}

TEST_CASE("phi inverse: normalization, closed form, range error") {
    PhiMap map(parse_expression("exp(u)"), {}, 0.0, {-3.0, 3.0}, 1e-10);
    CHECK(phi_inverse(map, 0.0) == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(phi_inverse(map, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    try {
        phi_inverse(map, 2.0);  // range of phi is (1 - e^3, 1 - e^-3)
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        CHECK(e.hi() < 1.0);
        CHECK(e.lo() == doctest::Approx(1.0 - std::exp(3.0)).epsilon(1e-9));
    }
}

TEST_CASE("ell map: g = 0 gives the zero map") {
    PhiMap phi(parse_expression("1"), {}, 0.0, {-2.0, 2.0}, 1e-10);
    EllMap ell(parse_expression("0"), {}, phi, 0.0, 1e-10);
    CHECK(ell(1.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ell.at_phi_of(-1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ell map: f = e^u, g = u with the paper normalization") {
    // phi pinned to -e^(-u); then ell(v) = v (1 - ln(-v)) + const
    PhiMap phi(parse_expression("exp(u)"), {}, 0.0, {-3.0, 3.0}, 1e-10, -1.0);
    CHECK(phi(0.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(phi(1.0) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-11));
    EllMap ell(parse_expression("u"), {}, phi, -1.0, 1e-10);
    auto closed = [](double v) { return v * (1.0 - std::log(-v)); };
    double c = ell(-1.0) - closed(-1.0);
    for (double v : {-2.5, -1.7, -0.9, -0.4, -0.15}) {
        CHECK(ell(v) - closed(v) == doctest::Approx(c).epsilon(1e-9));
    }
}

TEST_CASE("ell map: power-law case m=3, n=2 has slope g/f = 3") {
    // d/du ell(phi(u)) = g/f = 3u^2/u^2, so differences of ell(phi(u)) are 3 du
    PhiMap phi(parse_expression("u^2"), {}, 1.0, {0.1, 10.0}, 1e-10);
    EllMap ell(parse_expression("3*u^2"), {}, phi, 0.0, 1e-10);
    CHECK(ell.at_phi_of(2.0) - ell.at_phi_of(1.0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(ell.at_phi_of(5.0) - ell.at_phi_of(2.0) == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("ell map: both evaluation routes agree") {
    PhiMap phi(parse_expression("exp(u)"), {}, 0.0, {-3.0, 3.0}, 1e-10, -1.0);
    EllMap ell(parse_expression("u"), {}, phi, -1.0, 1e-10);
    for (double u : {-2.5, -1.0, 0.0, 0.7, 1.9, 2.9}) {
        CHECK(ell.at_phi_of(u) == doctest::Approx(ell(phi(u))).epsilon(1e-9));
    }
}

TEST_CASE("ell map invariant: ell'(v) = g(phi^{-1}(v)) by finite differences") {
    PhiMap phi(parse_expression("exp(u)"), {}, 0.0, {-3.0, 3.0}, 1e-10, -1.0);
    EllMap ell(parse_expression("u"), {}, phi, -1.0, 1e-10);
    const double h = 1e-3;
    for (double v : {-15.0, -4.0, -1.0, -0.3, -0.1}) {
        double d1 = (ell(v + h) - ell(v - h)) / (2.0 * h);
        double d2 = (ell(v + 0.5 * h) - ell(v - 0.5 * h)) / h;
        double fd = (4.0 * d2 - d1) / 3.0;
        CHECK(fd == doctest::Approx(ell.g_hat(v)).epsilon(1e-6));
    }
}

TEST_CASE("ell closed forms: table branches") {
    CHECK(structurally_equal(ell_closed_form(1, 1), parse_expression("exp(u)")));
    // m=2, n=1: 2 exp(u)
    ExprPtr e21 = ell_closed_form(2, 1);
    CHECK(eval(*e21, "u", 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval(*e21, "u", 1.0) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-14));
    // m=3, n=2: 3 ((-1) u)^(-1) = -3/u
    ExprPtr e32 = ell_closed_form(3, 2);
    CHECK(eval(*e32, "u", -2.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(eval(*e32, "u", -0.5) == doctest::Approx(6.0).epsilon(1e-14));
    // n = m != 1: (m/(1-m)) ln((1-m) u)
    ExprPtr e22 = ell_closed_form(2, 2);
    CHECK(eval(*e22, "u", -1.0) == doctest::Approx(-2.0 * std::log(1.0)).epsilon(1e-14));
    CHECK(eval(*e22, "u", -3.0) == doctest::Approx(-2.0 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("ell closed forms: uncovered pairs are errors") {
    CHECK_THROWS_AS(ell_closed_form(2, 0), ConstructionError);
    CHECK_THROWS_AS(ell_closed_form(3, -1), ConstructionError);
    CHECK_THROWS_AS(ell_closed_form(2, -2), ConstructionError);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

namespace {

struct PhiCase {
    const char* f;
    Interval domain;
    double u_ref;
    double anchor;
    double (*closed)(double);
};

const PhiCase kPhiCases[] = {
    {"1", {-5.0, 5.0}, 0.0, 0.0, [](double u) { return u; }},
    {"u", {0.1, 10.0}, 1.0, 0.0, [](double u) { return std::log(u); }},
    {"u^2", {0.1, 10.0}, 1.0, 0.0, [](double u) { return 1.0 - 1.0 / u; }},
    {"exp(u)", {-3.0, 3.0}, 0.0, 0.0, [](double u) { return 1.0 - std::exp(-u); }},
};

}  // namespace

TEST_CASE("property: quadrature phi matches closed forms to 1e-9") {
    for (const auto& c : kPhiCases) {
        PhiMap map(parse_expression(c.f), {}, c.u_ref, c.domain, 1e-10, c.anchor);
        for (int i = 0; i <= 100; ++i) {
            double u = c.domain.lo + c.domain.width() * i / 100.0;
            CAPTURE(c.f);
            CAPTURE(u);
            CHECK(std::fabs(map(u) - c.closed(u)) <= 1e-9);
        }
    }
}

TEST_CASE("property: phi round trip to 1e-9 on 100 random points per case") {
    std::mt19937_64 rng(314159);
    for (const auto& c : kPhiCases) {
        PhiMap map(parse_expression(c.f), {}, c.u_ref, c.domain, 1e-10, c.anchor);
        std::uniform_real_distribution<double> pick(c.domain.lo, c.domain.hi);
        for (int i = 0; i < 100; ++i) {
            double u = pick(rng);
            double v = map(u);
            CAPTURE(c.f);
            CAPTURE(u);
            CHECK(std::fabs(map.inverse(v) - u) <= 1e-9);
            CHECK(std::fabs(map(map.inverse(v)) - v) <= 1e-10 * std::fmax(1.0, std::fabs(v)));
        }
    }
}

TEST_CASE("property: phi is monotone with the sign of f") {
    std::mt19937_64 rng(2718);
    const char* fs[] = {"exp(u)", "-1-u^2"};
    for (const char* f : fs) {
        PhiMap map(parse_expression(f), {}, 0.0, {-2.0, 2.0}, 1e-10);
        double f_sign = map.f_at(0.0) > 0.0 ? 1.0 : -1.0;
        std::uniform_real_distribution<double> pick(-2.0, 2.0);
        for (int i = 0; i < 200; ++i) {
            double u1 = pick(rng), u2 = pick(rng);
            if (u1 == u2) continue;
            double lhs = map(u2) - map(u1);
            CHECK(std::signbit(lhs) == std::signbit((u2 - u1) * f_sign));
        }
    }
}

TEST_CASE("property: numeric ell matches the closed-form table up to one constant") {
    struct EllCase {
        int m, n;
        const char* f;
        const char* g;
        double anchor;  // phi(u_ref) pin that reproduces the table convention
        double v_lo, v_hi;
    };
    // domains chosen so both the quadrature and the table branch are defined
    const EllCase cases[] = {
        {2, 1, "u", "2*u", 0.0, -2.0, 2.0},       // phi = ln u on (0.1, 10)
        {3, 2, "u^2", "3*u^2", -1.0, -9.0, -0.2}, // phi = -1/u
        {1, 1, "u", "u", 0.0, -2.0, 2.0},
        {2, 2, "u^2", "2*u", -1.0, -9.0, -0.2},
    };
    for (const auto& c : cases) {
        CAPTURE(c.m);
        CAPTURE(c.n);
        PhiMap phi(parse_expression(c.f), {}, 1.0, {0.1, 10.0}, 1e-10, c.anchor);
        double v_ref = 0.5 * (c.v_lo + c.v_hi);
        EllMap ell(parse_expression(c.g), {}, phi, v_ref, 1e-10);
        ExprPtr closed = ell_closed_form(c.m, c.n);
        double constant = ell(v_ref) - eval(*closed, "u", v_ref);
        for (int i = 0; i <= 50; ++i) {
            double v = c.v_lo + (c.v_hi - c.v_lo) * i / 50.0;
            CAPTURE(v);
            CHECK(ell(v) - eval(*closed, "u", v) == doctest::Approx(constant).epsilon(1e-7));
        }
    }
}
