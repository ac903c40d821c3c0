#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace atomsg {

// Exact arithmetic for the combinatorial coefficient assembly. The
// alternating (-2)^t/t! terms against factorials make naive float
// assembly lose digits from n ~ 4 on, so coefficients stay rational
// until the final conversion.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial_exact(unsigned n);
BigInt binomial_exact(unsigned n, unsigned k);  // 0 when k > n

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

} // namespace atomsg
