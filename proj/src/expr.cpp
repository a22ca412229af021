#include "burgers/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "burgers/lambert.hpp"

namespace burgers {

// ---------------------------------------------------------------------------
// Bindings
// ---------------------------------------------------------------------------

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void Bindings::set(std::string name, double value) {
    for (auto& item : items_) {
        if (item.first == name) {
            item.second = value;
            return;
        }
    }
    items_.emplace_back(std::move(name), value);
}

const double* Bindings::find(std::string_view name) const {
    for (const auto& item : items_) {
        if (item.first == name) return &item.second;
    }
    return nullptr;
}

const char* func_name(Func f) {
    switch (f) {
        case Func::exp: return "exp";
        case Func::ln: return "ln";
        case Func::sqrt: return "sqrt";
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::tanh: return "tanh";
        case Func::abs: return "abs";
        case Func::lambertw0: return "lambertw0";
        case Func::lambertwm1: return "lambertwm1";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Node factories with literal-arithmetic folding
// ---------------------------------------------------------------------------

namespace {

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::constant(double value) {
    return make_node(Expr(Kind::constant, value, {}, Func::exp, nullptr, nullptr));
}

ExprPtr Expr::variable(std::string name) {
    return make_node(Expr(Kind::variable, 0.0, std::move(name), Func::exp, nullptr, nullptr));
}

ExprPtr Expr::negate(ExprPtr a) {
    if (a->is_constant()) return constant(-a->value());
    return make_node(Expr(Kind::negate, 0.0, {}, Func::exp, std::move(a), nullptr));
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant()) {
        double v = a->value() + b->value();
        if (std::isfinite(v)) return constant(v);
    }
    if (a->is_constant(0.0)) return b;
    if (b->is_constant(0.0)) return a;
    return make_node(Expr(Kind::add, 0.0, {}, Func::exp, std::move(a), std::move(b)));
}

ExprPtr Expr::subtract(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant()) {
        double v = a->value() - b->value();
        if (std::isfinite(v)) return constant(v);
    }
    if (b->is_constant(0.0)) return a;
    if (a->is_constant(0.0)) return negate(std::move(b));
    return make_node(Expr(Kind::subtract, 0.0, {}, Func::exp, std::move(a), std::move(b)));
}

ExprPtr Expr::multiply(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant()) {
        double v = a->value() * b->value();
        if (std::isfinite(v)) return constant(v);
    }
    // Folding by 0 short-circuits the other factor; derivative rules rely on
    // this to drop terms like 0*ln(u) without evaluating them.
    if (a->is_constant(0.0) || b->is_constant(0.0)) return constant(0.0);
    if (a->is_constant(1.0)) return b;
    if (b->is_constant(1.0)) return a;
    return make_node(Expr(Kind::multiply, 0.0, {}, Func::exp, std::move(a), std::move(b)));
}

ExprPtr Expr::divide(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant() && b->value() != 0.0) {
        double v = a->value() / b->value();
        if (std::isfinite(v)) return constant(v);
    }
    if (a->is_constant(0.0)) return constant(0.0);
    if (b->is_constant(1.0)) return a;
    return make_node(Expr(Kind::divide, 0.0, {}, Func::exp, std::move(a), std::move(b)));
}

ExprPtr Expr::power(ExprPtr base, ExprPtr exponent) {
    if (exponent->is_constant(1.0)) return base;
    if (exponent->is_constant(0.0)) return constant(1.0);
    if (base->is_constant() && exponent->is_constant()) {
        double b = base->value(), e = exponent->value();
        bool integral = std::nearbyint(e) == e;
        if (b > 0.0 || (b == 0.0 && e > 0.0) || (b < 0.0 && integral)) {
            double v = integral ? (std::fmod(e, 2.0) != 0.0 && b < 0.0 ? -1.0 : 1.0) *
                                      std::pow(std::fabs(b), e)
                                : std::pow(b, e);
            if (std::isfinite(v)) return constant(v);
        }
    }
    return make_node(Expr(Kind::power, 0.0, {}, Func::exp, std::move(base), std::move(exponent)));
}

ExprPtr Expr::call(Func f, ExprPtr a) {
    return make_node(Expr(Kind::call, 0.0, {}, f, std::move(a), nullptr));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct EnvView {
    const Bindings* base = nullptr;
    std::array<std::pair<std::string_view, double>, 2> extra{};
    int n_extra = 0;

    const double* find(std::string_view name) const {
        for (int i = 0; i < n_extra; ++i) {
            if (extra[i].first == name) return &extra[i].second;
        }
        return base ? base->find(name) : nullptr;
    }
};

double ipow(double base, long long n) {
    double r = 1.0, b = base;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

double eval_power(double b, double e) {
    bool integral = std::nearbyint(e) == e && std::fabs(e) < 9.0e15;
    if (b == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return 1.0;
        throw EvalDomainError("zero raised to a negative power");
    }
    if (integral) {
        auto n = static_cast<long long>(e);
        if (std::llabs(n) <= 64) {
            double p = ipow(b, std::llabs(n));
            return n < 0 ? 1.0 / p : p;
        }
        double m = std::pow(std::fabs(b), e);
        return (b < 0.0 && (n & 1)) ? -m : m;
    }
    if (b < 0.0) {
        throw EvalDomainError("negative base raised to a non-integer power");
    }
    return std::pow(b, e);
}

double eval_call(Func f, double x) {
    switch (f) {
        case Func::exp: return std::exp(x);
        case Func::ln:
            if (x <= 0.0) throw EvalDomainError("ln of a non-positive value");
            return std::log(x);
        case Func::sqrt:
            if (x < 0.0) throw EvalDomainError("sqrt of a negative value");
            return std::sqrt(x);
        case Func::sin: return std::sin(x);
        case Func::cos: return std::cos(x);
        case Func::tanh: return std::tanh(x);
        case Func::abs: return std::fabs(x);
        case Func::lambertw0: return lambert_w(x, WBranch::principal);
        case Func::lambertwm1: return lambert_w(x, WBranch::lower);
    }
    throw Error("unreachable function tag");
}

double eval_node(const Expr& e, const EnvView& env) {
    switch (e.kind()) {
        case Expr::Kind::constant: return e.value();
        case Expr::Kind::variable: {
            const double* v = env.find(e.name());
            if (!v) throw UnboundNameError("unbound name '" + e.name() + "'");
            return *v;
        }
        case Expr::Kind::negate: return -eval_node(*e.left(), env);
        case Expr::Kind::add: return eval_node(*e.left(), env) + eval_node(*e.right(), env);
        case Expr::Kind::subtract: return eval_node(*e.left(), env) - eval_node(*e.right(), env);
        case Expr::Kind::multiply: return eval_node(*e.left(), env) * eval_node(*e.right(), env);
        case Expr::Kind::divide: {
            double num = eval_node(*e.left(), env);
            double den = eval_node(*e.right(), env);
            if (den == 0.0) throw EvalDomainError("division by zero");
            return num / den;
        }
        case Expr::Kind::power:
            return eval_power(eval_node(*e.left(), env), eval_node(*e.right(), env));
        case Expr::Kind::call: return eval_call(e.func(), eval_node(*e.left(), env));
    }
    throw Error("unreachable node kind");
}

}  // namespace

double eval(const Expr& e, const Bindings& env) {
    EnvView view;
    view.base = &env;
    return eval_node(e, view);
}

double eval(const Expr& e, std::string_view var, double value) {
    EnvView view;
    view.extra[0] = {var, value};
    view.n_extra = 1;
    return eval_node(e, view);
}

double eval(const Expr& e, std::string_view var1, double v1, std::string_view var2, double v2) {
    EnvView view;
    view.extra[0] = {var1, v1};
    view.extra[1] = {var2, v2};
    view.n_extra = 2;
    return eval_node(e, view);
}

double eval(const Expr& e, const Bindings& env, std::string_view var, double value) {
    EnvView view;
    view.base = &env;
    view.extra[0] = {var, value};
    view.n_extra = 1;
    return eval_node(e, view);
}

// ---------------------------------------------------------------------------
// Parser
//
//   expression  := term { ('+' | '-') term }
//   term        := factor { ('*' | '/') factor }
//   factor      := signed_base [ '^' factor ]
//   signed_base := '-' signed_base | primary
//   primary     := number | name | name '(' expression ')' | '(' expression ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) {
            throw SyntaxError(std::string(what) + " at position " + std::to_string(pos), pos);
        }
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(msg + " at position " + std::to_string(pos), pos);
    }

    ExprPtr parse_expression() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::add(lhs, parse_term());
            } else if (accept('-')) {
                lhs = Expr::subtract(lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::multiply(lhs, parse_factor());
            } else if (accept('/')) {
                lhs = Expr::divide(lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_signed_base();
        if (accept('^')) return Expr::power(base, parse_factor());
        return base;
    }

    ExprPtr parse_signed_base() {
        if (accept('-')) return Expr::negate(parse_signed_base());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expression();
            expect(')', "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        double value = 0.0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        auto [next, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || next == begin) fail("malformed number");
        pos += static_cast<std::size_t>(next - begin);
        return Expr::constant(value);
    }

    ExprPtr parse_name() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        std::string name(text.substr(start, pos - start));
        if (peek() == '(') {
            static const std::pair<const char*, Func> table[] = {
                {"exp", Func::exp},   {"ln", Func::ln},     {"sqrt", Func::sqrt},
                {"sin", Func::sin},   {"cos", Func::cos},   {"tanh", Func::tanh},
                {"abs", Func::abs},   {"lambertw0", Func::lambertw0},
                {"lambertwm1", Func::lambertwm1},
            };
            for (const auto& [fname, tag] : table) {
                if (name == fname) {
                    ++pos;  // '('
                    ExprPtr arg = parse_expression();
                    expect(')', "expected ')' closing call");
                    return Expr::call(tag, arg);
                }
            }
            pos = start;
            fail("unknown function '" + name + "'");
        }
        return Expr::variable(std::move(name));
    }
};

}  // namespace

ExprPtr parse_expression(std::string_view text) {
    Parser p{text};
    if (p.at_end()) throw SyntaxError("empty expression", 0);
    ExprPtr e = p.parse_expression();
    if (!p.at_end()) p.fail("trailing input");
    return e;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

ExprPtr diff_call(const ExprPtr& node, const std::string& var) {
    const ExprPtr& arg = node->left();
    ExprPtr da = differentiate(arg, var);
    switch (node->func()) {
        case Func::exp: return Expr::multiply(node, da);
        case Func::ln: return Expr::divide(da, arg);
        case Func::sqrt:
            return Expr::divide(da, Expr::multiply(Expr::constant(2.0), node));
        case Func::sin: return Expr::multiply(Expr::call(Func::cos, arg), da);
        case Func::cos:
            return Expr::negate(Expr::multiply(Expr::call(Func::sin, arg), da));
        case Func::tanh:
            return Expr::multiply(
                Expr::subtract(Expr::constant(1.0),
                               Expr::power(node, Expr::constant(2.0))),
                da);
        case Func::abs:
            if (da->is_constant(0.0)) return Expr::constant(0.0);
            throw DifferentiationError("abs is not differentiable at 0 and is rejected");
        case Func::lambertw0:
        case Func::lambertwm1:
            // dW/dz = 1/(e^W (1+W)); same as W/(z(1+W)) with the removable
            // singularity at z = 0 filled in.
            return Expr::divide(
                da, Expr::multiply(Expr::call(Func::exp, node),
                                   Expr::add(Expr::constant(1.0), node)));
    }
    throw Error("unreachable function tag");
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e, const std::string& var) {
    switch (e->kind()) {
        case Expr::Kind::constant: return Expr::constant(0.0);
        case Expr::Kind::variable:
            return Expr::constant(e->name() == var ? 1.0 : 0.0);
        case Expr::Kind::negate: return Expr::negate(differentiate(e->left(), var));
        case Expr::Kind::add:
            return Expr::add(differentiate(e->left(), var), differentiate(e->right(), var));
        case Expr::Kind::subtract:
            return Expr::subtract(differentiate(e->left(), var), differentiate(e->right(), var));
        case Expr::Kind::call: return diff_call(e, var);
        case Expr::Kind::multiply: {
            const ExprPtr& a = e->left();
            const ExprPtr& b = e->right();
            return Expr::add(Expr::multiply(differentiate(a, var), b),
                             Expr::multiply(a, differentiate(b, var)));
        }
        case Expr::Kind::divide: {
            const ExprPtr& a = e->left();
            const ExprPtr& b = e->right();
            return Expr::divide(
                Expr::subtract(Expr::multiply(differentiate(a, var), b),
                               Expr::multiply(a, differentiate(b, var))),
                Expr::power(b, Expr::constant(2.0)));
        }
        case Expr::Kind::power: {
            const ExprPtr& a = e->left();
            const ExprPtr& b = e->right();
            ExprPtr da = differentiate(a, var);
            if (b->is_constant()) {
                double c = b->value();
                return Expr::multiply(
                    Expr::multiply(Expr::constant(c), Expr::power(a, Expr::constant(c - 1.0))),
                    da);
            }
            // a^b * (db ln a + b da/a); the ln-term folds away whenever the
            // exponent does not depend on var.
            ExprPtr db = differentiate(b, var);
            return Expr::multiply(e,
                                  Expr::add(Expr::multiply(db, Expr::call(Func::ln, a)),
                                            Expr::multiply(b, Expr::divide(da, a))));
        }
    }
    throw Error("unreachable node kind");
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement) {
    switch (e->kind()) {
        case Expr::Kind::constant: return e;
        case Expr::Kind::variable: return e->name() == var ? replacement : e;
        case Expr::Kind::negate: return Expr::negate(substitute(e->left(), var, replacement));
        case Expr::Kind::add:
            return Expr::add(substitute(e->left(), var, replacement),
                             substitute(e->right(), var, replacement));
        case Expr::Kind::subtract:
            return Expr::subtract(substitute(e->left(), var, replacement),
                                  substitute(e->right(), var, replacement));
        case Expr::Kind::multiply:
            return Expr::multiply(substitute(e->left(), var, replacement),
                                  substitute(e->right(), var, replacement));
        case Expr::Kind::divide:
            return Expr::divide(substitute(e->left(), var, replacement),
                                substitute(e->right(), var, replacement));
        case Expr::Kind::power:
            return Expr::power(substitute(e->left(), var, replacement),
                               substitute(e->right(), var, replacement));
        case Expr::Kind::call:
            return Expr::call(e->func(), substitute(e->left(), var, replacement));
    }
    throw Error("unreachable node kind");
}

ExprPtr substitute(const ExprPtr& e, const Bindings& constants) {
    if (e->kind() == Expr::Kind::variable) {
        const double* v = constants.find(e->name());
        return v ? Expr::constant(*v) : e;
    }
    switch (e->kind()) {
        case Expr::Kind::constant: return e;
        case Expr::Kind::negate: return Expr::negate(substitute(e->left(), constants));
        case Expr::Kind::add:
            return Expr::add(substitute(e->left(), constants), substitute(e->right(), constants));
        case Expr::Kind::subtract:
            return Expr::subtract(substitute(e->left(), constants),
                                  substitute(e->right(), constants));
        case Expr::Kind::multiply:
            return Expr::multiply(substitute(e->left(), constants),
                                  substitute(e->right(), constants));
        case Expr::Kind::divide:
            return Expr::divide(substitute(e->left(), constants),
                                substitute(e->right(), constants));
        case Expr::Kind::power:
            return Expr::power(substitute(e->left(), constants),
                               substitute(e->right(), constants));
        case Expr::Kind::call: return Expr::call(e->func(), substitute(e->left(), constants));
        default: throw Error("unreachable node kind");
    }
}

// ---------------------------------------------------------------------------
// Printing
//
// Precedence levels used for parenthesization: add/sub 1, mul/div 2,
// negate 3, power 5, atoms 6. A child is parenthesized when its level is
// below the level its context demands; the contexts are chosen so output
// reparses to a structurally identical tree under the grammar above.
// ---------------------------------------------------------------------------

namespace {

int node_level(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::add:
        case Expr::Kind::subtract: return 1;
        case Expr::Kind::multiply:
        case Expr::Kind::divide: return 2;
        case Expr::Kind::negate: return 3;
        case Expr::Kind::power: return 5;
        default: return 6;
    }
}

void print_number(std::string& out, double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.append(buf, end);
}

void print_node(std::string& out, const Expr& e, int min_level) {
    bool parens = node_level(e) < min_level;
    if (parens) out.push_back('(');
    switch (e.kind()) {
        case Expr::Kind::constant: print_number(out, e.value()); break;
        case Expr::Kind::variable: out += e.name(); break;
        case Expr::Kind::negate:
            out.push_back('-');
            print_node(out, *e.left(), 6);
            break;
        case Expr::Kind::add:
            print_node(out, *e.left(), 1);
            out.push_back('+');
            print_node(out, *e.right(), 2);
            break;
        case Expr::Kind::subtract:
            print_node(out, *e.left(), 1);
            out.push_back('-');
            print_node(out, *e.right(), 2);
            break;
        case Expr::Kind::multiply:
            print_node(out, *e.left(), 2);
            out.push_back('*');
            print_node(out, *e.right(), 3);
            break;
        case Expr::Kind::divide:
            print_node(out, *e.left(), 2);
            out.push_back('/');
            print_node(out, *e.right(), 3);
            break;
        case Expr::Kind::power:
            print_node(out, *e.left(), 6);
            out.push_back('^');
            print_node(out, *e.right(), 3);
            break;
        case Expr::Kind::call:
            out += func_name(e.func());
            out.push_back('(');
            print_node(out, *e.left(), 0);
            out.push_back(')');
            break;
    }
    if (parens) out.push_back(')');
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_node(out, e, 0);
    return out;
}

std::set<std::string> free_names(const Expr& e) {
    std::set<std::string> names;
    struct Walk {
        std::set<std::string>& names;
        void operator()(const Expr& n) {
            if (n.kind() == Expr::Kind::variable) names.insert(n.name());
            if (n.left()) (*this)(*n.left());
            if (n.right()) (*this)(*n.right());
        }
    } walk{names};
    walk(e);
    return names;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::constant: return a.value() == b.value();
        case Expr::Kind::variable: return a.name() == b.name();
        case Expr::Kind::call:
            return a.func() == b.func() && structurally_equal(*a.left(), *b.left());
        case Expr::Kind::negate: return structurally_equal(*a.left(), *b.left());
        default:
            return structurally_equal(*a.left(), *b.left()) &&
                   structurally_equal(*a.right(), *b.right());
    }
}

}  // namespace burgers
