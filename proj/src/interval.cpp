#include "discpack/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "discpack/error.hpp"
#include "discpack/rational.hpp"

namespace discpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

// Two ulps outward for libm results, whose error is below one ulp.
double down2(double x) { return down(down(x)); }
double up2(double x) { return up(up(x)); }

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string("non-finite interval endpoint in ") + what);
    }
}

// The rounded result and the sign of (exact - rounded).
struct Rounded {
    double value;
    int error_sign;
};

int sign(double x) { return (x > 0.0) - (x < 0.0); }

Rounded sum(double a, double b) {
    const double s = a + b;
    require_finite(s, "addition");
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, sign(err)};
}

Rounded product(double a, double b) {
    const double p = a * b;
    require_finite(p, "multiplication");
    return {p, sign(std::fma(a, b, -p))};
}

Rounded quotient(double a, double b) {
    const double q = a / b;
    require_finite(q, "division");
    const double r = std::fma(-q, b, a);
    return {q, sign(r) * sign(b)};
}

double lower(Rounded r) { return r.error_sign < 0 ? down(r.value) : r.value; }
double upper(Rounded r) { return r.error_sign > 0 ? up(r.value) : r.value; }

Interval power_of_point(double x, int n) {
    Interval base(x);
    Interval acc(1.0);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

// Whether some point (k + offset) * pi, k of the given parity, may lie in [a.lo, a.hi].
bool may_hit(const Interval& a, double offset, int parity) {
    const double pi = M_PI;
    const auto k_lo = static_cast<long long>(std::floor(a.lo() / pi - offset)) - 1;
    const auto k_hi = static_cast<long long>(std::ceil(a.hi() / pi - offset)) + 1;
    for (long long k = k_lo; k <= k_hi; ++k) {
        if (((k % 2) + 2) % 2 != parity) continue;
        const Interval point = Interval(static_cast<double>(k) + offset) * pi_interval();
        if (point.hi() >= a.lo() && point.lo() <= a.hi()) return true;
    }
    return false;
}

Interval clamp_unit(double lo, double hi) {
    return Interval(std::max(-1.0, lo), std::min(1.0, hi));
}

}  // namespace

Interval::Interval(double point) : Interval(point, point) {}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("interval endpoints must be finite");
    }
    if (lo > hi) {
        throw DomainError("interval requires lo <= hi, got [" + to_decimal(lo) + ", " +
                          to_decimal(hi) + "]");
    }
}

double Interval::mid() const {
    const double m = 0.5 * lo_ + 0.5 * hi_;
    return std::clamp(m, lo_, hi_);
}

std::pair<Interval, Interval> Interval::bisect() const {
    const double m = mid();
    return {Interval(lo_, m), Interval(m, hi_)};
}

Interval Interval::hull(const Interval& other) const {
    return Interval(std::min(lo_, other.lo_), std::max(hi_, other.hi_));
}

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(lower(sum(a.lo(), b.lo())), upper(sum(a.hi(), b.hi())));
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
    const Rounded p[4] = {product(a.lo(), b.lo()), product(a.lo(), b.hi()),
                          product(a.hi(), b.lo()), product(a.hi(), b.hi())};
    double lo = kInf;
    double hi = -kInf;
    for (const auto& r : p) {
        lo = std::min(lo, lower(r));
        hi = std::max(hi, upper(r));
    }
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw DomainError("division by an interval containing zero");
    }
    const Rounded q[4] = {quotient(a.lo(), b.lo()), quotient(a.lo(), b.hi()),
                          quotient(a.hi(), b.lo()), quotient(a.hi(), b.hi())};
    double lo = kInf;
    double hi = -kInf;
    for (const auto& r : q) {
        lo = std::min(lo, lower(r));
        hi = std::max(hi, upper(r));
    }
    return Interval(lo, hi);
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0.0) {
        throw DomainError("sqrt of an interval with negative part [" + to_decimal(a.lo()) +
                          ", " + to_decimal(a.hi()) + "]");
    }
    auto root = [](double x) {
        const double s = std::sqrt(x);
        return Rounded{s, sign(std::fma(-s, s, x))};
    };
    return Interval(lower(root(a.lo())), upper(root(a.hi())));
}

Interval sqrt(const Interval& a, ClampNegative clamp) {
    if (a.lo() < 0.0 && a.lo() >= -clamp.tolerance && a.hi() >= 0.0) {
        return sqrt(Interval(0.0, a.hi()));
    }
    return sqrt(a);
}

Interval sin(const Interval& a) {
    if (a.width() >= 2.0 * pi_interval().lo()) return Interval(-1.0, 1.0);
    const double s_lo = std::sin(a.lo());
    const double s_hi = std::sin(a.hi());
    double lo = down2(std::min(s_lo, s_hi));
    double hi = up2(std::max(s_lo, s_hi));
    if (may_hit(a, 0.5, 0)) hi = 1.0;
    if (may_hit(a, 0.5, 1)) lo = -1.0;
    return clamp_unit(lo, hi);
}

Interval cos(const Interval& a) {
    if (a.width() >= 2.0 * pi_interval().lo()) return Interval(-1.0, 1.0);
    const double c_lo = std::cos(a.lo());
    const double c_hi = std::cos(a.hi());
    double lo = down2(std::min(c_lo, c_hi));
    double hi = up2(std::max(c_lo, c_hi));
    if (may_hit(a, 0.0, 0)) hi = 1.0;
    if (may_hit(a, 0.0, 1)) lo = -1.0;
    return clamp_unit(lo, hi);
}

Interval tan(const Interval& a) {
    const Interval c = cos(a);
    if (c.contains_zero()) {
        throw DomainError("tan across a pole on [" + to_decimal(a.lo()) + ", " +
                          to_decimal(a.hi()) + "]");
    }
    return sin(a) / c;
}

Interval acos(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0) {
        throw DomainError("acos argument outside [-1, 1]");
    }
    const double lo = std::max(0.0, down2(std::acos(a.hi())));
    const double hi = std::min(pi_interval().hi(), up2(std::acos(a.lo())));
    return Interval(lo, hi);
}

Interval exp(const Interval& a) {
    const double lo = std::max(0.0, down2(std::exp(a.lo())));
    const double hi = up2(std::exp(a.hi()));
    require_finite(hi, "exp");
    return Interval(lo, hi);
}

Interval log(const Interval& a) {
    if (a.lo() <= 0.0) throw DomainError("log of an interval reaching zero or below");
    return Interval(down2(std::log(a.lo())), up2(std::log(a.hi())));
}

Interval pow(const Interval& base, int exponent) {
    if (exponent == 0) return Interval(1.0);
    if (exponent < 0) return Interval(1.0) / pow(base, -exponent);
    if (exponent % 2 == 1) {
        return Interval(power_of_point(base.lo(), exponent).lo(),
                        power_of_point(base.hi(), exponent).hi());
    }
    const Interval m = abs(base);
    return Interval(power_of_point(m.lo(), exponent).lo(), power_of_point(m.hi(), exponent).hi());
}

Interval pow(const Interval& base, const Interval& exponent) {
    if (base.lo() <= 0.0) throw DomainError("real power requires a positive base");
    return exp(exponent * log(base));
}

Interval abs(const Interval& a) {
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return Interval(0.0, std::max(-a.lo(), a.hi()));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

const Interval& pi_interval() {
    static const Interval pi(interval_from_decimal("3.14159265358979323846264338327950").lo(),
                             interval_from_decimal("3.14159265358979323846264338327951").hi());
    return pi;
}

Interval interval_from_decimal(const std::string& text) { return enclose(parse_rational(text)); }

std::string to_decimal(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << to_decimal(a.lo()) << ", " << to_decimal(a.hi()) << ']';
}

}  // namespace discpack
