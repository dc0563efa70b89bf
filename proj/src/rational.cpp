#include "discpack/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "discpack/error.hpp"

namespace discpack {

Rational parse_rational(const std::string& text) {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(text.substr(0, slash));
        const Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw FormatError("zero denominator in '" + text + "'");
        return num / den;
    }
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    BigInt digits = 0;
    int scale = 0;
    bool any_digit = false;
    bool after_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (after_point) --scale;
            any_digit = true;
        } else if (c == '.' && !after_point) {
            after_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw FormatError("not a number: '" + text + "'");
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        try {
            std::size_t used = 0;
            scale += std::stoi(text.substr(i), &used);
            i += used;
        } catch (const std::exception&) {
            throw FormatError("bad exponent in '" + text + "'");
        }
    }
    if (i != text.size()) throw FormatError("trailing characters in '" + text + "'");
    Rational value(digits);
    const BigInt ten_power = boost::multiprecision::pow(BigInt(10), scale < 0 ? -scale : scale);
    if (scale < 0) {
        value /= Rational(ten_power);
    } else {
        value *= Rational(ten_power);
    }
    return negative ? Rational(-value) : value;
}

Interval enclose(const Rational& q) {
    const double d = q.convert_to<double>();
    if (!std::isfinite(d)) throw DomainError("rational out of double range");
    constexpr double inf = std::numeric_limits<double>::infinity();
    // convert_to is not guaranteed to be correctly rounded; step until enclosing.
    double lo = d;
    double hi = d;
    while (Rational(lo) > q) lo = std::nextafter(lo, -inf);
    while (Rational(hi) < q) hi = std::nextafter(hi, inf);
    if (lo == hi) return Interval(lo);
    if (Rational(lo) < q && Rational(hi) > q) {
        // Shrink to adjacent doubles around q.
        while (Rational(std::nextafter(lo, inf)) < q) lo = std::nextafter(lo, inf);
        while (Rational(std::nextafter(hi, -inf)) > q) hi = std::nextafter(hi, -inf);
    }
    if (Rational(lo) == q) return Interval(lo);
    if (Rational(hi) == q) return Interval(hi);
    return Interval(lo, hi);
}

}  // namespace discpack
