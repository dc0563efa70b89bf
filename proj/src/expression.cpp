#include "discpack/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "discpack/error.hpp"

namespace discpack {

struct Expression::Node {
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind = Kind::Constant;
    Rational value = 0;
    double approx = 0.0;
    Interval enclosure{0.0};
    std::string name;
    int index = -1;
    int exponent = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

NodePtr make_constant(const Rational& v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    n->approx = v.convert_to<double>();
    n->enclosure = enclose(v);
    return n;
}

NodePtr make_variable(std::string name, int index = -1) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    n->index = index;
    return n;
}

bool is_constant(const NodePtr& n, int v) { return n->kind == Kind::Constant && n->value == v; }

NodePtr make_binary(Kind kind, NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) {
        switch (kind) {
            case Kind::Add: return make_constant(a->value + b->value);
            case Kind::Sub: return make_constant(a->value - b->value);
            case Kind::Mul: return make_constant(a->value * b->value);
            case Kind::Div:
                if (b->value != 0) return make_constant(a->value / b->value);
                break;
            default: break;
        }
    }
    switch (kind) {
        case Kind::Add:
            if (is_constant(a, 0)) return b;
            if (is_constant(b, 0)) return a;
            break;
        case Kind::Sub:
            if (is_constant(b, 0)) return a;
            break;
        case Kind::Mul:
            if (is_constant(a, 0) || is_constant(b, 0)) return make_constant(0);
            if (is_constant(a, 1)) return b;
            if (is_constant(b, 1)) return a;
            break;
        case Kind::Div:
            if (is_constant(b, 1)) return a;
            break;
        default: break;
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_neg(NodePtr a) {
    if (a->kind == Kind::Constant) return make_constant(-a->value);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_pow(NodePtr a, int exponent) {
    if (exponent == 0) return make_constant(1);
    if (exponent == 1) return a;
    if (a->kind == Kind::Constant && (exponent > 0 || a->value != 0)) {
        Rational r = 1;
        for (int i = 0; i < std::abs(exponent); ++i) r *= a->value;
        return make_constant(exponent > 0 ? r : Rational(1 / r));
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->lhs = std::move(a);
    n->exponent = exponent;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError("expression '" + text_ + "': " + what + " at offset " +
                          std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(Kind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = make_binary(Kind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(Kind::Mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make_binary(Kind::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!accept('^')) return base;
        bool negative = false;
        const bool parenthesized = accept('(');
        if (accept('-')) negative = true;
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("integer exponent expected");
        int e = std::stoi(text_.substr(start, pos_ - start));
        if (parenthesized && !accept(')')) fail("')' expected");
        return make_pow(base, negative ? -e : e);
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) fail("')' expected");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t p = pos_ + 1;
                if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
                if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                    pos_ = p;
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        ++pos_;
                    }
                }
            }
            return make_constant(parse_rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return make_variable(text_.substr(start, pos_ - start));
        }
        fail("unexpected character");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

template <class T>
T constant_as(const Node& n);
template <>
double constant_as<double>(const Node& n) {
    return n.approx;
}
template <>
Interval constant_as<Interval>(const Node& n) {
    return n.enclosure;
}

double power(double x, int e) { return std::pow(x, e); }
Interval power(const Interval& x, int e) { return pow(x, e); }

template <class T>
T eval(const Node& n, std::span<const T> values) {
    switch (n.kind) {
        case Kind::Constant: return constant_as<T>(n);
        case Kind::Variable:
            if (n.index < 0 || static_cast<std::size_t>(n.index) >= values.size()) {
                throw FormatError("unbound variable '" + n.name + "'");
            }
            return values[n.index];
        case Kind::Add: return eval(*n.lhs, values) + eval(*n.rhs, values);
        case Kind::Sub: return eval(*n.lhs, values) - eval(*n.rhs, values);
        case Kind::Mul: return eval(*n.lhs, values) * eval(*n.rhs, values);
        case Kind::Div: return eval(*n.lhs, values) / eval(*n.rhs, values);
        case Kind::Neg: return -eval(*n.lhs, values);
        case Kind::Pow: return power(eval(*n.lhs, values), n.exponent);
    }
    return T{};
}

NodePtr bind_node(const NodePtr& n, const std::vector<std::string>& names) {
    switch (n->kind) {
        case Kind::Constant: return n;
        case Kind::Variable: {
            const auto it = std::find(names.begin(), names.end(), n->name);
            if (it == names.end()) throw FormatError("unknown variable '" + n->name + "'");
            return make_variable(n->name, static_cast<int>(it - names.begin()));
        }
        case Kind::Neg: return make_neg(bind_node(n->lhs, names));
        case Kind::Pow: return make_pow(bind_node(n->lhs, names), n->exponent);
        default: return make_binary(n->kind, bind_node(n->lhs, names), bind_node(n->rhs, names));
    }
}

NodePtr differentiate(const NodePtr& n, const std::string& name) {
    switch (n->kind) {
        case Kind::Constant: return make_constant(0);
        case Kind::Variable: return make_constant(n->name == name ? 1 : 0);
        case Kind::Add:
            return make_binary(Kind::Add, differentiate(n->lhs, name), differentiate(n->rhs, name));
        case Kind::Sub:
            return make_binary(Kind::Sub, differentiate(n->lhs, name), differentiate(n->rhs, name));
        case Kind::Mul:
            return make_binary(Kind::Add, make_binary(Kind::Mul, differentiate(n->lhs, name), n->rhs),
                               make_binary(Kind::Mul, n->lhs, differentiate(n->rhs, name)));
        case Kind::Div: {
            NodePtr num =
                make_binary(Kind::Sub, make_binary(Kind::Mul, differentiate(n->lhs, name), n->rhs),
                            make_binary(Kind::Mul, n->lhs, differentiate(n->rhs, name)));
            return make_binary(Kind::Div, num, make_pow(n->rhs, 2));
        }
        case Kind::Neg: return make_neg(differentiate(n->lhs, name));
        case Kind::Pow:
            return make_binary(
                Kind::Mul,
                make_binary(Kind::Mul, make_constant(n->exponent), make_pow(n->lhs, n->exponent - 1)),
                differentiate(n->lhs, name));
    }
    return make_constant(0);
}

void collect(const Node& n, std::vector<std::string>& out) {
    if (n.kind == Kind::Variable) {
        if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
        return;
    }
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
}

void print(const Node& n, std::ostream& os) {
    switch (n.kind) {
        case Kind::Constant:
            if (n.value < 0) {
                os << '(' << n.value << ')';
            } else {
                os << n.value;
            }
            return;
        case Kind::Variable: os << n.name; return;
        case Kind::Neg: os << "(-"; print(*n.lhs, os); os << ')'; return;
        case Kind::Pow: os << '('; print(*n.lhs, os); os << ")^" << n.exponent; return;
        default: break;
    }
    const char op = n.kind == Kind::Add ? '+' : n.kind == Kind::Sub ? '-' : n.kind == Kind::Mul ? '*' : '/';
    os << '(';
    print(*n.lhs, os);
    os << op;
    print(*n.rhs, os);
    os << ')';
}

}  // namespace

Expression::Expression() : root_(make_constant(0)) {}
Expression::Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Expression Expression::parse(const std::string& text) { return Expression(Parser(text).parse()); }
Expression Expression::constant(const Rational& value) { return Expression(make_constant(value)); }
Expression Expression::variable(const std::string& name) { return Expression(make_variable(name)); }

std::vector<std::string> Expression::variables() const {
    std::vector<std::string> out;
    collect(*root_, out);
    return out;
}

Expression Expression::bind(const std::vector<std::string>& names) const {
    return Expression(bind_node(root_, names));
}

Expression Expression::derivative(const std::string& name) const {
    return Expression(differentiate(root_, name));
}

double Expression::evaluate(std::span<const double> values) const { return eval(*root_, values); }

Interval Expression::evaluate(std::span<const Interval> values) const {
    return eval(*root_, values);
}

std::string Expression::to_string() const {
    std::ostringstream os;
    print(*root_, os);
    return os.str();
}

Expression operator+(const Expression& a, const Expression& b) {
    return Expression(make_binary(Kind::Add, a.root_, b.root_));
}
Expression operator-(const Expression& a, const Expression& b) {
    return Expression(make_binary(Kind::Sub, a.root_, b.root_));
}
Expression operator*(const Expression& a, const Expression& b) {
    return Expression(make_binary(Kind::Mul, a.root_, b.root_));
}
Expression operator/(const Expression& a, const Expression& b) {
    return Expression(make_binary(Kind::Div, a.root_, b.root_));
}
Expression operator-(const Expression& a) { return Expression(make_neg(a.root_)); }
Expression pow(const Expression& a, int exponent) { return Expression(make_pow(a.root_, exponent)); }

}  // namespace discpack
