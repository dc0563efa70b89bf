#include "discpack/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "discpack/error.hpp"

namespace discpack {

namespace {

int sign_of(const Rational& v) { return (v > 0) - (v < 0); }

// A split point strictly inside (a, b) where q does not vanish.
std::optional<double> split_point(const Polynomial& q, double a, double b) {
    static constexpr double kFractions[] = {0.5, 0.375, 0.625, 0.25, 0.75, 0.4375, 0.5625};
    for (double f : kFractions) {
        const double m = a + (b - a) * f;
        if (m > a && m < b && q.sign_at(m) != 0) return m;
    }
    return std::nullopt;
}

class Isolator {
public:
    Isolator(const Polynomial& q) : q_(q), sturm_(q) {}

    void run(double a, double b, int n) {
        if (n == 0) return;
        if (n == 1) {
            if (q_.sign_at(b) == 0) {
                out_.push_back({q_, Interval(b)});
                return;
            }
            if (q_.sign_at(a) != 0) {
                out_.push_back({q_, Interval(a, b)});
                return;
            }
        }
        const auto m = split_point(q_, a, b);
        if (!m) throw DomainError("roots are not separable in double precision");
        const int left = sturm_.count(a, *m);
        run(a, *m, left);
        run(*m, b, n - left);
    }

    std::vector<RootBracket> take() { return std::move(out_); }

private:
    const Polynomial& q_;
    SturmSequence sturm_;
    std::vector<RootBracket> out_;
};

// Halves a sign-change bracket, keeping the root.
Interval shrink_once(const Polynomial& q, const Interval& iv) {
    if (iv.is_point()) return iv;
    const double m = iv.mid();
    if (m == iv.lo() || m == iv.hi()) return iv;
    const int sm = q.sign_at(m);
    if (sm == 0) return Interval(m);
    return sm == q.sign_at(iv.lo()) ? Interval(m, iv.hi()) : Interval(iv.lo(), m);
}

}  // namespace

SturmSequence::SturmSequence(const Polynomial& p) {
    if (p.is_zero()) return;
    chain_.push_back(p);
    Polynomial next = p.derivative();
    while (!next.is_zero()) {
        chain_.push_back(next);
        const auto& prev = chain_[chain_.size() - 2];
        next = Polynomial() - Polynomial::divmod(prev, chain_.back()).second;
    }
}

int SturmSequence::sign_changes(double x) const {
    const Rational rx(x);
    int changes = 0;
    int last = 0;
    for (const auto& p : chain_) {
        const int s = sign_of(p(rx));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count(double a, double b) const { return sign_changes(a) - sign_changes(b); }

std::vector<RootBracket> isolate_roots(const Polynomial& p, const Interval& range) {
    if (p.is_zero()) throw NotSquarefree("the zero polynomial has no isolated roots");
    const Polynomial q = p.squarefree_part();
    if (q.degree() < 1) return {};

    Isolator iso(q);
    std::vector<RootBracket> brackets;
    if (q.sign_at(range.lo()) == 0) brackets.push_back({q, Interval(range.lo())});
    if (!range.is_point()) {
        const SturmSequence sturm(q);
        iso.run(range.lo(), range.hi(), sturm.count(range.lo(), range.hi()));
    }
    for (auto& b : iso.take()) brackets.push_back(std::move(b));

    // Neighbouring brackets may share a (non-root) split point.
    for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
        while (brackets[i].interval.hi() >= brackets[i + 1].interval.lo()) {
            const Interval left = shrink_once(q, brackets[i].interval);
            const Interval right = shrink_once(q, brackets[i + 1].interval);
            if (left == brackets[i].interval && right == brackets[i + 1].interval) {
                throw DomainError("roots are not separable in double precision");
            }
            brackets[i].interval = left;
            brackets[i + 1].interval = right;
        }
    }
    return brackets;
}

Interval refine_root(const RootBracket& bracket, double tol) {
    if (!(tol > 0.0)) throw DomainError("refine_root requires tol > 0");
    const Polynomial& q = bracket.polynomial;
    double a = bracket.interval.lo();
    double b = bracket.interval.hi();
    const int sa = q.sign_at(a);
    const int sb = q.sign_at(b);
    if (sa == 0) return Interval(a);
    if (sb == 0) return Interval(b);
    if (sa == sb) throw DomainError("bracket endpoints do not change sign");
    while (b - a > tol) {
        const double m = Interval(a, b).mid();
        if (m == a || m == b) break;
        const int sm = q.sign_at(m);
        if (sm == 0) return Interval(m);
        if (sm == sa) {
            a = m;
        } else {
            b = m;
        }
    }
    return Interval(a, b);
}

}  // namespace discpack
