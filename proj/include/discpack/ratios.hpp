#pragma once

#include <string>
#include <vector>

#include "discpack/interval.hpp"
#include "discpack/polynomial.hpp"

namespace discpack {

/// A named disc ratio, defined as a root in (0, 1) of an integer polynomial.
struct RatioEntry {
    std::string name;
    Polynomial polynomial;
};

/// The twelve special ratios r1, ra, r2, r3, r4, r5, rb, r6, r7, rc, r8, r9.
const std::vector<RatioEntry>& ratio_table();

struct RatioValue {
    std::string name;
    Polynomial polynomial;
    Interval enclosure;
    /// Number of distinct roots of the polynomial in (0, 1).
    std::size_t roots_in_unit;
};

/// Encloses the ratio to width tol. When the polynomial has several roots in
/// (0, 1) the largest one is taken.
RatioValue compute_ratio(const RatioEntry& entry, double tol = 1e-10);
std::vector<RatioValue> compute_ratios(double tol = 1e-10);

/// Enclosure of a ratio by name; throws DomainError for an unknown name.
Interval ratio(const std::string& name, double tol = 1e-12);

}  // namespace discpack
