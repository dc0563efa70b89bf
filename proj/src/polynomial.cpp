#include "discpack/polynomial.hpp"

#include <sstream>

#include "discpack/error.hpp"

namespace discpack {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<long long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int Polynomial::sign_at(double x) const {
    const Rational v = (*this)(Rational(x));
    return (v > 0) - (v < 0);
}

Interval Polynomial::operator()(const Interval& x) const {
    Interval acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + enclose(*it);
    return acc;
}

double Polynomial::approx(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + it->convert_to<double>();
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long long>(i));
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        const Rational factor = rem[k] / b.leading();
        quot[k - db] = factor;
        if (factor == 0) continue;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= factor * b.coeffs_[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    const Rational lead = leading();
    for (auto& x : c) x /= lead;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

Polynomial Polynomial::squarefree_part() const {
    if (is_zero()) return {};
    const Polynomial g = gcd(*this, derivative());
    if (g.is_zero() || g.degree() == 0) return monic();
    return divmod(*this, g).first.monic();
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (negative) {
            os << '-';
        } else if (!first) {
            os << '+';
        }
        const bool unit = mag == 1;
        if (!unit || k == 0) {
            os << mag;
            if (k > 0) os << '*';
        }
        if (k >= 1) os << 'x';
        if (k >= 2) os << '^' << k;
        first = false;
    }
    return os.str();
}

nlohmann::json to_json(const Polynomial& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : p.coefficients()) {
        const BigInt num = boost::multiprecision::numerator(c);
        const BigInt den = boost::multiprecision::denominator(c);
        if (num > std::numeric_limits<long long>::max() || num < std::numeric_limits<long long>::min() ||
            den > std::numeric_limits<long long>::max()) {
            throw FormatError("coefficient does not fit a 64-bit integer pair");
        }
        out.push_back({num.convert_to<long long>(), den.convert_to<long long>()});
    }
    return out;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("polynomial must be a JSON array");
    std::vector<Rational> coeffs;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer()) {
            throw FormatError("polynomial coefficient must be an integer pair [num, den]");
        }
        const auto den = item[1].get<long long>();
        if (den == 0) throw FormatError("zero denominator in polynomial coefficient");
        coeffs.emplace_back(Rational(item[0].get<long long>(), den));
    }
    return Polynomial(std::move(coeffs));
}

nlohmann::json to_json(const Interval& a) {
    return nlohmann::json::array({to_decimal(a.lo()), to_decimal(a.hi())});
}

Interval interval_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
        throw FormatError("interval must be a pair of decimal strings");
    }
    const double lo = std::stod(j[0].get<std::string>());
    const double hi = std::stod(j[1].get<std::string>());
    return Interval(lo, hi);
}

}  // namespace discpack
