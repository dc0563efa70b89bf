#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "discpack/interval.hpp"
#include "discpack/rational.hpp"

namespace discpack {

/// Arithmetic expression over named real variables, parsed from text such as
/// "(x4-x3)^2+(y4-y3)^2-(r+r)^2". Supports + - * /, unary minus, integer
/// powers and parentheses. Numeric literals are kept as exact rationals.
///
/// Variables are referenced by position after `bind`, which resolves each name
/// against an ordered list. Evaluation is templated on the scalar type so the
/// same tree serves plain doubles and certified intervals.
class Expression {
public:
    struct Node;

    Expression();
    static Expression parse(const std::string& text);
    static Expression constant(const Rational& value);
    static Expression variable(const std::string& name);

    /// Names referenced by the expression, in first-occurrence order.
    std::vector<std::string> variables() const;

    /// Copy with every variable resolved to its position in `names`; throws
    /// FormatError for a name missing from the list.
    Expression bind(const std::vector<std::string>& names) const;

    /// Symbolic partial derivative with respect to `name`.
    Expression derivative(const std::string& name) const;

    /// Requires a bound expression; `values` is indexed like the bind list.
    double evaluate(std::span<const double> values) const;
    Interval evaluate(std::span<const Interval> values) const;

    std::string to_string() const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);
    friend Expression pow(const Expression& a, int exponent);

private:
    explicit Expression(std::shared_ptr<const Node> root);
    std::shared_ptr<const Node> root_;
};

}  // namespace discpack
