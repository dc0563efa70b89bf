#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "discpack/interval.hpp"

namespace discpack {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a decimal literal such as "-12.5e-3" or "7/3".
Rational parse_rational(const std::string& text);

/// Tightest double interval containing q.
Interval enclose(const Rational& q);

}  // namespace discpack
