#pragma once

#include <iosfwd>
#include <string>
#include <utility>

namespace discpack {

/// Closed real interval [lo, hi] with finite double endpoints.
///
/// Every operation returns an enclosure of the exact image set. Results of
/// IEEE-exact operations (+, -, *, /, sqrt) are widened only in the direction
/// of the rounding error, which is recovered with error-free transforms, so
/// exact results stay tight. Results of libm transcendentals (sin, cos, acos,
/// exp, log) are widened by two ulps on both sides.
class Interval {
public:
    constexpr Interval() = default;
    explicit Interval(double point);
    Interval(double lo, double hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double mid() const;

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    /// Splits at the midpoint; children share the midpoint exactly.
    std::pair<Interval, Interval> bisect() const;

    /// Smallest interval containing both.
    Interval hull(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DomainError when the divisor contains zero.
Interval operator/(const Interval& a, const Interval& b);

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

/// Permits square roots of inputs that are nonnegative in exact arithmetic but
/// whose enclosure dips slightly below zero: a lower endpoint in [-tolerance, 0)
/// is raised to zero.
struct ClampNegative {
    double tolerance = 0.0;
};

/// Throws DomainError when a.lo() < 0.
Interval sqrt(const Interval& a);
Interval sqrt(const Interval& a, ClampNegative clamp);

Interval sin(const Interval& a);
Interval cos(const Interval& a);
/// Computed as sin/cos; throws DomainError when the interval reaches a pole.
Interval tan(const Interval& a);
/// Argument must lie within [-1, 1].
Interval acos(const Interval& a);
Interval exp(const Interval& a);
/// Requires a.lo() > 0.
Interval log(const Interval& a);

Interval pow(const Interval& base, int exponent);
/// base^exponent for a strictly positive base.
Interval pow(const Interval& base, const Interval& exponent);

Interval abs(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

/// Certified enclosure of pi, from a stored decimal bracket of width 1e-32.
const Interval& pi_interval();

/// Enclosure of a decimal literal, e.g. "0.1".
Interval interval_from_decimal(const std::string& text);

/// Shortest decimal string that parses back to exactly `x`.
std::string to_decimal(double x);

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace discpack
