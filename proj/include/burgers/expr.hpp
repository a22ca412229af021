#pragma once

#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Named values for evaluation. Flat and small; linear lookup beats hashing
// at the sizes that occur here (one variable plus a handful of parameters).
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<std::string, double>> init);

    void set(std::string name, double value);  // insert or overwrite
    const double* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<std::pair<std::string, double>> items_;
};

enum class Func { exp, ln, sqrt, sin, cos, tanh, abs, lambertw0, lambertwm1 };

const char* func_name(Func f);

// Immutable expression tree for one-variable math. Nodes are shared and never
// mutated after construction, so trees are safe to evaluate concurrently.
// Construction goes through the factories, which fold literal arithmetic
// (2*3 -> 6, x*1 -> x, x^1 -> x, ...) so derivatives come out in plain form.
class Expr {
public:
    enum class Kind {
        constant,
        variable,
        negate,
        add,
        subtract,
        multiply,
        divide,
        power,
        call,
    };

    static ExprPtr constant(double value);
    static ExprPtr variable(std::string name);
    static ExprPtr negate(ExprPtr a);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr subtract(ExprPtr a, ExprPtr b);
    static ExprPtr multiply(ExprPtr a, ExprPtr b);
    static ExprPtr divide(ExprPtr a, ExprPtr b);
    static ExprPtr power(ExprPtr base, ExprPtr exponent);
    static ExprPtr call(Func f, ExprPtr a);

    Kind kind() const { return kind_; }
    double value() const { return value_; }            // constant nodes
    const std::string& name() const { return name_; }  // variable nodes
    Func func() const { return func_; }                // call nodes
    const ExprPtr& left() const { return a_; }         // first (or only) child
    const ExprPtr& right() const { return b_; }

    bool is_constant() const { return kind_ == Kind::constant; }
    bool is_constant(double v) const { return is_constant() && value_ == v; }

private:
    Expr(Kind kind, double value, std::string name, Func func, ExprPtr a, ExprPtr b)
        : kind_(kind),
          value_(value),
          name_(std::move(name)),
          func_(func),
          a_(std::move(a)),
          b_(std::move(b)) {}

    Kind kind_;
    double value_;
    std::string name_;
    Func func_;
    ExprPtr a_, b_;
};

// Parses standard infix notation (see the grammar in the README): ^ is
// right-associative, unary minus binds tighter than the base of ^ but looser
// than function application, whitespace is insignificant.
ExprPtr parse_expression(std::string_view text);

double eval(const Expr& e, const Bindings& env);
double eval(const Expr& e, std::string_view var, double value);
double eval(const Expr& e, std::string_view var1, double v1, std::string_view var2, double v2);
double eval(const Expr& e, const Bindings& env, std::string_view var, double value);

// Exact derivative as a tree; only constant folding is applied. abs whose
// argument depends on `var` is rejected.
ExprPtr differentiate(const ExprPtr& e, const std::string& var);

// Replace a variable by a subtree (or by constants from a binding set).
ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement);
ExprPtr substitute(const ExprPtr& e, const Bindings& constants);

// Prints a form that parses back to a structurally identical tree.
std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

std::set<std::string> free_names(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    return structurally_equal(*a, *b);
}

}  // namespace burgers
