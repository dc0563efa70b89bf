#pragma once

#include <vector>

#include "discpack/interval.hpp"
#include "discpack/polynomial.hpp"

namespace discpack {

/// An interval holding exactly one simple root of `polynomial`. Either the
/// endpoints have opposite signs or the interval is a single exact root.
struct RootBracket {
    Polynomial polynomial;
    Interval interval;
};

/// Sturm chain of a squarefree polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& p);
    /// Number of sign changes of the chain at x (zeros skipped).
    int sign_changes(double x) const;
    /// Number of distinct real roots in the half-open interval (a, b].
    int count(double a, double b) const;
    const std::vector<Polynomial>& chain() const { return chain_; }

private:
    std::vector<Polynomial> chain_;
};

/// Brackets every real root of p in the closed range, in increasing order.
/// p is first reduced to its squarefree part p / gcd(p, p'). Brackets are
/// pairwise disjoint.
///
/// Throws NotSquarefree for the zero polynomial, whose roots are not isolated.
std::vector<RootBracket> isolate_roots(const Polynomial& p, const Interval& range);

/// Shrinks a bracket by exact-sign bisection until its width is at most tol,
/// or until the endpoints are adjacent doubles. The result always lies inside
/// the input bracket.
Interval refine_root(const RootBracket& bracket, double tol);

}  // namespace discpack
