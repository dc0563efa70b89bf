#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discpack/interval.hpp"
#include "discpack/rational.hpp"

namespace discpack {

/// Univariate polynomial with exact rational coefficients in ascending degree
/// order. The coefficient list is kept trimmed: it is empty for the zero
/// polynomial and otherwise ends with a nonzero leading coefficient.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<long long> coefficients);

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    /// Sign of the exact value at x (a double is an exact dyadic rational).
    int sign_at(double x) const;
    /// Interval Horner evaluation.
    Interval operator()(const Interval& x) const;
    double approx(double x) const;

    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Euclidean division; throws DomainError for a zero divisor.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    /// Monic greatest common divisor (zero if both are zero).
    static Polynomial gcd(Polynomial a, Polynomial b);

    Polynomial monic() const;
    /// p / gcd(p, p'), made monic.
    Polynomial squarefree_part() const;

    /// Human-readable form such as "x^2+2*x-1".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// JSON array of [numerator, denominator] integer pairs, ascending degree.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

/// Interval as two decimal strings that round-trip exactly.
nlohmann::json to_json(const Interval& a);
Interval interval_from_json(const nlohmann::json& j);

}  // namespace discpack
