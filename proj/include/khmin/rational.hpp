#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace khmin {

// Exact arbitrary-precision arithmetic. Every computation in this library is
// over Q; there are no floating-point numbers and no tolerances anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_zero(const Rational& r) { return r.is_zero(); }

}  // namespace khmin
