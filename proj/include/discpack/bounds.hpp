#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "discpack/interval.hpp"

namespace discpack {

/// Density of the hexagonal compact packing of equal discs, pi / (2 sqrt 3).
double delta1();
Interval delta1_interval();

/// Triangle with mutually tangent discs of radii 1, r, r on its vertices.
struct FlorianTriangle {
    double alpha;    ///< angle at the unit-disc vertex
    double beta;     ///< angle at each r-disc vertex
    double area;     ///< by Heron's formula
    double covered;  ///< alpha/2 + beta r^2
};

/// Throws DomainError outside (0, 1].
FlorianTriangle florian_triangle(double r);
/// Density of the (1, r, r) triangle: an upper bound on the maximal density.
double florian_bound(double r);
Interval florian_bound(const Interval& r);

/// Smallest ratio for which the heptagon+pentagon bound applies.
inline constexpr double kBlindThreshold = 0.6735;

/// pi (1 + r^2) / (7 tan(pi/7) + 5 r^2 tan(pi/5)). Throws DomainError for
/// r < 0.6735 or r > 1.
double blind_bound(double r);
Interval blind_bound(const Interval& r);

/// sqrt((7 tan(pi/7) - 6 tan(pi/6)) / (6 tan(pi/6) - 5 tan(pi/5))), the ratio
/// at which blind_bound reaches delta1.
double r_blind();
Interval r_blind_interval();

/// Proven upper bound on the maximal density at one ratio. The value is at
/// least delta1 since the equal-disc hexagonal packing is always available.
class BoundSample {
public:
    /// Throws DomainError when value < delta1() or r outside (0, 1].
    BoundSample(double r, double value);
    double r() const { return r_; }
    double value() const { return value_; }

private:
    double r_;
    double value_;
};

/// Slope bound between ratios x < y: pi / (y^2 sqrt 3).
double lipschitz_constant(double x, double y);

/// min_i [ value_i + pi / (max(r, r_i)^2 sqrt 3) |r - r_i| ]. Requires
/// nonempty samples.
double lipschitz_envelope(const std::vector<BoundSample>& samples, double r);

enum class BoundSource { Florian, Blind, Envelope };
std::string to_string(BoundSource s);

struct UpperBound {
    double value;
    BoundSource source;
};

/// Smallest of the Florian bound, the Blind bound where it applies (floored at
/// delta1, since it alone undercuts delta1 above r_B) and the envelope.
UpperBound best_upper(double r, const std::vector<BoundSample>& samples);

/// CSV with header "r,value".
std::vector<BoundSample> read_bound_samples(std::istream& in);
void write_bound_samples(std::ostream& out, const std::vector<BoundSample>& samples);

}  // namespace discpack
