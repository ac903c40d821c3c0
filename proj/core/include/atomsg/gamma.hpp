#pragma once

namespace atomsg {

// Integer-order incomplete gamma functions, by the closed finite sums
//   gamma(1+n,x) = n! [1 - e^,-x sum_{m<=n} x^m/m!]
//   Gamma(1+n,x) = n! e^-x sum_{m<=n} x^m/m!
// and nothing else (no quadrature). For x > 700 the e^-x factor
// underflows; the lower function returns n! and the upper 0.

double factorial(int n);  // double-precision n!, n <= 170

// gamma(1+n, x), the [0,x] piece. Negative x throws std::domain_error.
double lower_gamma_int(int n, double x);

// Gamma(1+n, x), the [x,inf) piece. Negative x throws std::domain_error.
double upper_gamma_int(int n, double x);

// Regularized forms gamma(1+n,x)/n! and Gamma(1+n,x)/n!, both in [0,1].
// These are what the potential assembly consumes: keeping the factorial
// in the exact coefficient and the bracket in [0,1] avoids overflow.
double reg_lower_gamma(int n, double x);
double reg_upper_gamma(int n, double x);

} // namespace atomsg
