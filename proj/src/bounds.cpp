#include "discpack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "discpack/error.hpp"

namespace discpack {

namespace {

Interval tan_pi_over(int n) { return tan(pi_interval() / Interval(static_cast<double>(n))); }

void check_ratio(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("ratio must lie in (0, 1], got " + to_decimal(r));
}

}  // namespace

double delta1() {
    static const double value = M_PI / (2.0 * std::sqrt(3.0));
    return value;
}

Interval delta1_interval() {
    static const Interval value = pi_interval() / (Interval(2.0) * sqrt(Interval(3.0)));
    return value;
}

FlorianTriangle florian_triangle(double r) {
    check_ratio(r);
    const double side_r = 1.0 + r;
    const double base = 2.0 * r;
    const double alpha = std::acos((2.0 * side_r * side_r - base * base) / (2.0 * side_r * side_r));
    const double beta = std::acos((side_r * side_r + base * base - side_r * side_r) / (2.0 * side_r * base));
    const double s = (2.0 * side_r + base) / 2.0;
    const double area = std::sqrt(s * (s - side_r) * (s - side_r) * (s - base));
    return {alpha, beta, area, alpha / 2.0 + beta * r * r};
}

double florian_bound(double r) {
    const auto t = florian_triangle(r);
    return t.covered / t.area;
}

Interval florian_bound(const Interval& r) {
    if (!(r.lo() > 0.0 && r.hi() <= 1.0)) throw DomainError("florian_bound requires r within (0, 1]");
    const Interval one(1.0);
    const Interval side = one + r;
    const Interval base = Interval(2.0) * r;
    // cos(alpha) = 1 - 2 r^2 / (1+r)^2, cos(beta) = r / (1+r).
    const Interval cos_alpha = one - Interval(2.0) * pow(r, 2) / pow(side, 2);
    const Interval cos_beta = r / side;
    const auto clamp = [](const Interval& c) {
        return Interval(std::max(-1.0, c.lo()), std::min(1.0, c.hi()));
    };
    const Interval alpha = acos(clamp(cos_alpha));
    const Interval beta = acos(clamp(cos_beta));
    const Interval area = r * sqrt(one + base);
    return (alpha / Interval(2.0) + beta * pow(r, 2)) / area;
}

double blind_bound(double r) {
    if (!(r >= kBlindThreshold && r <= 1.0)) {
        throw DomainError("blind_bound requires r in [0.6735, 1], got " + to_decimal(r));
    }
    const double r2 = r * r;
    return M_PI * (1.0 + r2) / (7.0 * std::tan(M_PI / 7.0) + 5.0 * r2 * std::tan(M_PI / 5.0));
}

Interval blind_bound(const Interval& r) {
    if (!(r.lo() >= kBlindThreshold && r.hi() <= 1.0)) {
        throw DomainError("blind_bound requires r within [0.6735, 1]");
    }
    // (1+s)/(a+bs) = 1/b + (b-a)/(b(a+bs)), with s used once.
    const Interval r2 = pow(r, 2);
    const Interval a = Interval(7.0) * tan_pi_over(7);
    const Interval b = Interval(5.0) * tan_pi_over(5);
    return pi_interval() * (Interval(1.0) / b + (b - a) / (b * (a + b * r2)));
}

double r_blind() {
    const double t5 = std::tan(M_PI / 5.0);
    const double t6 = std::tan(M_PI / 6.0);
    const double t7 = std::tan(M_PI / 7.0);
    return std::sqrt((7.0 * t7 - 6.0 * t6) / (6.0 * t6 - 5.0 * t5));
}

Interval r_blind_interval() {
    const Interval t5 = tan_pi_over(5);
    const Interval t6 = tan_pi_over(6);
    const Interval t7 = tan_pi_over(7);
    return sqrt((Interval(7.0) * t7 - Interval(6.0) * t6) / (Interval(6.0) * t6 - Interval(5.0) * t5));
}

BoundSample::BoundSample(double r, double value) : r_(r), value_(value) {
    check_ratio(r);
    if (!(value >= delta1())) {
        throw DomainError("bound sample at r=" + to_decimal(r) + " has value " + to_decimal(value) +
                          " below delta1");
    }
}

double lipschitz_constant(double x, double y) {
    const double larger = std::max(x, y);
    return M_PI / (larger * larger * std::sqrt(3.0));
}

double lipschitz_envelope(const std::vector<BoundSample>& samples, double r) {
    if (samples.empty()) throw DomainError("lipschitz_envelope needs at least one sample");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        best = std::min(best, s.value() + lipschitz_constant(r, s.r()) * std::abs(r - s.r()));
    }
    return best;
}

std::string to_string(BoundSource s) {
    switch (s) {
        case BoundSource::Florian: return "florian";
        case BoundSource::Blind: return "blind";
        case BoundSource::Envelope: return "envelope";
    }
    return "unknown";
}

UpperBound best_upper(double r, const std::vector<BoundSample>& samples) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("best_upper requires r in (0, 1)");
    UpperBound best{florian_bound(r), BoundSource::Florian};
    if (r >= kBlindThreshold) {
        const double blind = std::max(delta1(), blind_bound(r));
        if (blind < best.value) best = {blind, BoundSource::Blind};
    }
    if (!samples.empty()) {
        const double env = lipschitz_envelope(samples, r);
        if (env < best.value) best = {env, BoundSource::Envelope};
    }
    return best;
}

std::vector<BoundSample> read_bound_samples(std::istream& in) {
    std::vector<BoundSample> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line_no == 1 && line.rfind("r,", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw FormatError("bound samples line " + std::to_string(line_no) + ": expected r,value");
        }
        try {
            out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw FormatError("bound samples line " + std::to_string(line_no) + ": not a number");
        }
    }
    return out;
}

void write_bound_samples(std::ostream& out, const std::vector<BoundSample>& samples) {
    out << "r,value\n";
    for (const auto& s : samples) out << to_decimal(s.r()) << ',' << to_decimal(s.value()) << '\n';
}

}  // namespace discpack
