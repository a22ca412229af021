#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "burgers/cli.hpp"
#include "burgers/problem_file.hpp"

using namespace burgers;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("burgers_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string name(const std::string& n) const { return (path / n).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// redirects stdout to a file for the duration of one CLI call
std::string capture_stdout(const std::function<int()>& fn, int& code) {
    std::fflush(stdout);
    fs::path tmp = fs::temp_directory_path() / ("burgers_capture_" + std::to_string(::getpid()));
    int saved = ::dup(1);
    FILE* f = std::freopen(tmp.c_str(), "w", stdout);
    REQUIRE(f != nullptr);
    code = fn();
    std::fflush(stdout);
    ::dup2(saved, 1);
    ::close(saved);
    std::string text = slurp(tmp.string());
    fs::remove(tmp);
    return text;
}

const char* kRational =
    "# transport with the affine profile\n"
    "f = \"0\"\n"
    "g = \"u\"\n"
    "h = \"(a*s+b)/c\"\n"
    "param.a = 1\n"
    "param.b = 0\n"
    "param.c = 1\n"
    "u_domain = [-5, 5]\n"
    "n_scan = 256\n";

}  // namespace

TEST_CASE("problem files: parse, defaults and diagnostics") {
    Problem p = parse_problem_text(kRational, "mem");
    CHECK(p.homogeneous());
    CHECK(p.params.contains("a"));
    CHECK(p.u_domain->lo == -5.0);
    CHECK(p.n_scan == 256);

    // unknown keys cite the line
    try {
        parse_problem_text("f = \"0\"\ng = \"u\"\nbogus = 3\nh = \"s\"\n", "mem");
        FAIL("expected Error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("mem:3") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
    // expression syntax errors cite the line too
    try {
        parse_problem_text("f = \"0\"\ng = \"u +\"\nh = \"s\"\n", "mem");
        FAIL("expected Error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem_text("f = \"0\"\ng = \"u\"\n", "mem"), Error);     // no h
    CHECK_THROWS_AS(parse_problem_text("f = \"0\"\ng = \"u\"\nh = \"s\"\nu_domain = [2, 1]\n",
                                       "mem"),
                    Error);
    CHECK_THROWS_AS(load_problem_file("/nonexistent/path.prob"), Error);
}

TEST_CASE("solve: CSV schema, padding and bit-stability") {
    TempDir dir;
    std::string prob = dir.file("shock.prob",
                                "f = \"0\"\n"
                                "g = \"u\"\n"
                                "h = \"-tanh(s)\"\n"
                                "u_domain = [-5, 5]\n"
                                "n_scan = 512\n");
    std::string out1 = dir.name("a.csv");
    std::string out2 = dir.name("b.csv");
    std::vector<std::string> args{"solve",       "--problem", prob, "--x", "-0.5:0.5:5",
                                  "--t",         "0.9:1.3:5", "--out", out1};
    CHECK(cli::run(args) == 0);
    args.back() = out2;
    CHECK(cli::run(args) == 0);
    std::string csv = slurp(out1);
    CHECK(csv == slurp(out2));  // bit-stable across runs

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "x,t,branch_count,u_0,u_1,u_2,converged");
    std::size_t rows = 0;
    bool saw_multivalued = false, saw_padding = false;
    std::string line;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 6);
        auto c = line.find(",3,");
        if (c != std::string::npos) saw_multivalued = true;
        if (line.find(",,") != std::string::npos) saw_padding = true;
        CHECK(line.back() == '1');  // all converged on this window
    }
    CHECK(rows == 25);
    CHECK(saw_multivalued);
    CHECK(saw_padding);
    CHECK(csv.find("\r\n") == std::string::npos);
}

TEST_CASE("solve: numbers round-trip through 17 significant digits") {
    TempDir dir;
    std::string prob = dir.file("rat.prob", kRational);
    std::string out = dir.name("rat.csv");
    CHECK(cli::run({"solve", "--problem", prob, "--x", "0:1:3", "--t", "1:2:2", "--out",
                    out}) == 0);
    std::string csv = slurp(out);
    // u(1, 1) = 1/2 and u(0.5, 1) = 1/4 print exactly
    CHECK(csv.find("1,1,1,0.5,1\n") != std::string::npos);
    CHECK(csv.find("0.5,1,1,0.25,1\n") != std::string::npos);
    // u(1, 2) = 1/3 needs all 17 digits
    CHECK(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("residual: exit code 0 on pass, 2 on fail") {
    TempDir dir;
    std::string prob = dir.file("rat.prob", kRational);
    CHECK(cli::run({"residual", "--problem", prob, "--claim", "(a*x+b)/(a*t+c)", "--x",
                    "0:1:201", "--t", "0:1:201", "--tol", "1e-4"}) == 0);
    int code = 0;
    std::string text = capture_stdout(
        [&] {
            return cli::run({"residual", "--problem", prob, "--claim", "x+t", "--x", "0:1:51",
                             "--t", "0:1:51"});
        },
        code);
    CHECK(code == 2);
    CHECK(text.find("FAIL") != std::string::npos);

    // the residual of the trivial claim u = 0 for f = 0 is identically zero
    CHECK(cli::run({"residual", "--problem", prob, "--claim", "0", "--x", "0:1:11", "--t",
                    "0:1:11", "--tol", "1e-15"}) == 0);

    // --from-solve verifies the solver's own field at a grid-suited tolerance
    CHECK(cli::run({"residual", "--problem", prob, "--from-solve", "--x", "0:1:101", "--t",
                    "0:1:101", "--tol", "1e-3"}) == 0);
}

TEST_CASE("breaking-time: value and none") {
    TempDir dir;
    std::string shock = dir.file("shock.prob",
                                 "f = \"0\"\ng = \"u\"\nh = \"-tanh(s)\"\n");
    int code = -1;
    std::string text = capture_stdout(
        [&] { return cli::run({"breaking-time", "--problem", shock, "--s", "-5:5"}); }, code);
    CHECK(code == 0);
    CHECK(std::stod(text) == doctest::Approx(1.0).epsilon(1e-3));

    std::string calm = dir.file("calm.prob", "f = \"0\"\ng = \"u\"\nh = \"tanh(s)\"\n");
    text = capture_stdout(
        [&] { return cli::run({"breaking-time", "--problem", calm, "--s", "-5:5"}); }, code);
    CHECK(code == 0);
    CHECK(text == "none\n");
}

TEST_CASE("phi-table: tabulates the quadrature maps") {
    TempDir dir;
    std::string prob = dir.file("exp.prob",
                                "f = \"exp(u)\"\n"
                                "g = \"u\"\n"
                                "h = \"s\"\n"
                                "u_domain = [-4, 4]\n"
                                "u_ref = 0\n"
                                "phi_at_ref = -1\n"
                                "ell_at_ref = -1\n");
    std::string out = dir.name("phi.csv");
    CHECK(cli::run({"phi-table", "--problem", prob, "--u", "-1:1:5", "--out", out}) == 0);
    std::string csv = slurp(out);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "u,phi(u),ell(phi(u))");
    // row at u = 0: phi = -1, ell(phi) = -1 under this normalization
    CHECK(csv.find("0,-1,-1") != std::string::npos);

    // phi-table on a homogeneous problem is a usage error
    std::string hom = dir.file("hom.prob", "f = \"0\"\ng = \"u\"\nh = \"s\"\n");
    CHECK(cli::run({"phi-table", "--problem", hom, "--u", "0:1:3"}) == 1);
}

TEST_CASE("examples: single entries run and report") {
    int code = -1;
    std::string text = capture_stdout(
        [&] { return cli::run({"examples", "--id", "ex2.2-rational"}); }, code);
    CHECK(code == 0);
    CHECK(text.find("ex2.2-rational") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);

    text = capture_stdout(
        [&] { return cli::run({"examples", "--id", "ex3.5-quadratic-claim"}); }, code);
    CHECK(code == 0);
    CHECK(text.find("KNOWN-DISCREPANCY CONFIRMED") != std::string::npos);

    CHECK(cli::run({"examples", "--id", "no-such-example"}) == 1);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(cli::run({"frobnicate"}) == 1);
    CHECK(cli::run({"solve", "--problem", "x.prob"}) == 1);          // missing window/out
    CHECK(cli::run({"solve", "--problem", "/nope.prob", "--x", "0:1:3", "--t", "0:1:3",
                    "--out", "/tmp/o.csv"}) == 1);
    CHECK(cli::run({"residual", "--problem", "/nope.prob", "--x", "0:1:3", "--t",
                    "0:1:3"}) == 1);
    TempDir dir;
    std::string prob = dir.file("rat.prob", kRational);
    CHECK(cli::run({"solve", "--problem", prob, "--x", "0:1", "--t", "0:1:3", "--out",
                    dir.name("x.csv")}) == 1);  // malformed axis
    CHECK(cli::run({"solve", "--problem", prob, "--x", "1:0:5", "--t", "0:1:3", "--out",
                    dir.name("x.csv")}) == 1);  // empty axis
}

TEST_CASE("numerical non-convergence exits with 3") {
    TempDir dir;
    // 1/f has an effective jump inside nearly every quadrature panel, so the
    // checkpoint ladder cannot reach its tolerance
    std::string prob = dir.file("nasty.prob",
                                "f = \"2+tanh(1e12*sin(1000*u))\"\n"
                                "g = \"u\"\n"
                                "h = \"s\"\n"
                                "u_domain = [0.1, 2]\n");
    CHECK(cli::run({"phi-table", "--problem", prob, "--u", "0.2:1:5"}) == 3);
}
