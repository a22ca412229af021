#include "burgers/problem_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace burgers {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_quotes(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw Error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_real(std::string_view s, const std::string& origin, int line) {
    s = trim(s);
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [next, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || next != end) {
        fail(origin, line, "malformed number '" + std::string(s) + "'");
    }
    return v;
}

Interval parse_interval(std::string_view s, const std::string& origin, int line) {
    s = trim(s);
    if (s.size() < 5 || s.front() != '[' || s.back() != ']') {
        fail(origin, line, "expected an interval like [lo, hi]");
    }
    s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        fail(origin, line, "expected an interval like [lo, hi]");
    }
    Interval iv{parse_real(s.substr(0, comma), origin, line),
                parse_real(s.substr(comma + 1), origin, line)};
    if (!(iv.lo < iv.hi)) fail(origin, line, "interval bounds must satisfy lo < hi");
    return iv;
}

ExprPtr parse_expr_value(std::string_view s, const std::string& origin, int line) {
    try {
        return parse_expression(strip_quotes(trim(s)));
    } catch (const SyntaxError& e) {
        fail(origin, line, e.what());
    }
}

}  // namespace

Problem parse_problem_text(std::string_view text, const std::string& origin) {
    Problem p;
    bool have_f = false, have_g = false, have_h = false;

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string_view sv = trim(raw);
        if (sv.empty() || sv.front() == '#') continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos) {
            fail(origin, line, "expected 'key = value'");
        }
        std::string key{trim(sv.substr(0, eq))};
        std::string_view value = trim(sv.substr(eq + 1));
        if (value.empty()) fail(origin, line, "missing value for key '" + key + "'");

        if (key == "f") {
            p.f = parse_expr_value(value, origin, line);
            have_f = true;
        } else if (key == "g") {
            p.g = parse_expr_value(value, origin, line);
            have_g = true;
        } else if (key == "h") {
            p.h = parse_expr_value(value, origin, line);
            have_h = true;
        } else if (key.starts_with("param.")) {
            std::string name = key.substr(6);
            if (name.empty()) fail(origin, line, "param key needs a name: param.<name>");
            p.params.set(name, parse_real(value, origin, line));
        } else if (key == "u_domain") {
            p.u_domain = parse_interval(value, origin, line);
        } else if (key == "s_domain") {
            p.s_domain = parse_interval(value, origin, line);
        } else if (key == "tol") {
            double tol = parse_real(value, origin, line);
            if (!(tol > 0.0)) fail(origin, line, "tol must be positive");
            p.root_tol = tol;
            p.quad_tol = tol;
        } else if (key == "n_scan") {
            double v = parse_real(value, origin, line);
            if (v < 2.0 || v != static_cast<int>(v)) {
                fail(origin, line, "n_scan must be an integer >= 2");
            }
            p.n_scan = static_cast<int>(v);
        } else if (key == "u_ref") {
            p.u_ref = parse_real(value, origin, line);
        } else if (key == "v_ref") {
            p.v_ref = parse_real(value, origin, line);
        } else if (key == "phi_at_ref") {
            p.phi_at_ref = parse_real(value, origin, line);
        } else if (key == "ell_at_ref") {
            p.ell_at_ref = parse_real(value, origin, line);
        } else {
            fail(origin, line, "unknown key '" + key + "'");
        }
    }

    if (!have_f || !have_g || !have_h) {
        throw Error(origin + ": f, g and h are all required");
    }
    return p;
}

Problem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str(), path);
}

}  // namespace burgers
