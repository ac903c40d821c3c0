#pragma once

#include <vector>

#include "atomsg/rational.hpp"

namespace atomsg {

// Hydrogen-like radial function R_nl for effective charge z_eff and
// length scale a_mu. Normalized so that int_0^inf R^2 xi^2 dxi = 1.
struct RadialFunction {
    int n = 1;
    int l = 0;
    double z_eff = 1.0;
    double a_mu = 1.0;

    void validate() const;
    // decay scale of R^2 xi^2: useful truncation aid for quadrature
    double scale() const { return n * a_mu / (2.0 * z_eff); }
};

// R_nl(xi), units length^(-3/2). xi < 0 throws.
double radial_eval(const RadialFunction& rf, double xi);

// Generalized Laguerre L_k^alpha(x) by the three-term recurrence.
double laguerre(int k, int alpha, double x);

// Exact monomial coefficients of L_k^alpha: coeff[i] multiplies x^i.
// Used only to cross-check the float recurrence at small k.
std::vector<BigRational> laguerre_coeffs_exact(int k, int alpha);

} // namespace atomsg
