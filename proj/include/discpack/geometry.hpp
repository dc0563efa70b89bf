#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "discpack/interval.hpp"

namespace discpack {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);

class Disc {
public:
    /// Throws DomainError unless radius > 0.
    Disc(double x, double y, double radius);

    double x() const { return x_; }
    double y() const { return y_; }
    double radius() const { return radius_; }
    Vec2 center() const { return {x_, y_}; }

    friend bool operator==(const Disc&, const Disc&) = default;

private:
    double x_;
    double y_;
    double radius_;
};

/// A periodic packing: the discs of one cell, repeated by every integer
/// combination of the lattice vectors u and v.
class FundamentalDomain {
public:
    /// Throws DomainError for a degenerate lattice (|u x v| = 0).
    FundamentalDomain(Vec2 u, Vec2 v, std::vector<Disc> discs);

    Vec2 u() const { return u_; }
    Vec2 v() const { return v_; }
    const std::vector<Disc>& discs() const { return discs_; }
    double area() const;

private:
    Vec2 u_;
    Vec2 v_;
    std::vector<Disc> discs_;
};

/// The disc of radius r3 tangent to d1 and d2, on the left of the ray from
/// d1's center toward d2's center. A collinear configuration (|c1 - c2| equal
/// to the sum of the tangency distances) yields the on-segment solution.
///
/// Throws NoSolution when the three tangency distances violate the triangle
/// inequality.
Disc stick(const Disc& d1, const Disc& d2, double r3);

/// pi * sum(radius^2) / |u x v|.
double density(const FundamentalDomain& d);
/// Certified enclosure of the same quantity.
Interval density_interval(const FundamentalDomain& d);

/// Disc i overlaps the translate of disc j by m*u + n*v.
struct Violation {
    std::size_t i;
    std::size_t j;
    int m;
    int n;
    double distance;
    double required;
};

/// Every overlapping pair with center distance below r_i + r_j - tol. Each
/// unordered pair is reported once: i < j, or i == j with (m, n) positive in
/// lexicographic order.
std::vector<Violation> validate(const FundamentalDomain& d, double tol);

/// Scales lattice, centers and radii by factor > 0.
FundamentalDomain scaled(const FundamentalDomain& d, double factor);
/// Replaces every disc of radius `from` by a concentric disc of radius `to`.
FundamentalDomain with_radius_replaced(const FundamentalDomain& d, double from, double to);

/// Unit-disc hexagonal compact packing: u = (2, 0), v = (1, sqrt 3).
FundamentalDomain hexagonal_domain();

/// {"u":[a,b],"v":[c,d],"discs":[[x,y,r],...]}
nlohmann::json to_json(const FundamentalDomain& d);
FundamentalDomain domain_from_json(const nlohmann::json& j);

}  // namespace discpack
