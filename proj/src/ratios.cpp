#include "discpack/ratios.hpp"

#include <limits>

#include "discpack/error.hpp"
#include "discpack/roots.hpp"

namespace discpack {

const std::vector<RatioEntry>& ratio_table() {
    static const std::vector<RatioEntry> table{
        {"r1", Polynomial{9, -8, -10, 0, 1}},
        {"ra", Polynomial{1, 4, -2, -12, 1}},
        {"r2", Polynomial{9, -120, 388, -24, -482, -232, -44, -8, 1}},
        {"r3", Polynomial{-1, -2, 3, 8}},
        {"r4", Polynomial{-1, 2, 1}},
        {"r5", Polynomial{9, -12, -26, -12, 9}},
        {"rb", Polynomial{1, -1, -5, 1}},
        {"r6", Polynomial{1, 4, -10, -28, 1}},
        {"r7", Polynomial{-1, 3, 2}},
        {"rc", Polynomial{1, -4, -2, -4, 1}},
        {"r8", Polynomial{-1, 6, 3}},
        {"r9", Polynomial{1, -10, 1}},
    };
    return table;
}

RatioValue compute_ratio(const RatioEntry& entry, double tol) {
    // Open interval (0, 1): neither endpoint is a root of any table entry.
    auto brackets = isolate_roots(entry.polynomial, Interval(0.0, 1.0));
    std::erase_if(brackets, [](const RootBracket& b) { return b.interval.hi() <= 0.0 || b.interval.lo() >= 1.0; });
    if (brackets.empty()) throw NoSolution("ratio " + entry.name + " has no root in (0, 1)");
    return {entry.name, entry.polynomial, refine_root(brackets.back(), tol), brackets.size()};
}

std::vector<RatioValue> compute_ratios(double tol) {
    std::vector<RatioValue> out;
    for (const auto& entry : ratio_table()) out.push_back(compute_ratio(entry, tol));
    return out;
}

Interval ratio(const std::string& name, double tol) {
    for (const auto& entry : ratio_table()) {
        if (entry.name == name) return compute_ratio(entry, tol).enclosure;
    }
    throw DomainError("unknown ratio '" + name + "'");
}

}  // namespace discpack
