#pragma once

#include <complex>

#include "atomsg/composite.hpp"  // Vec3

namespace atomsg {

// Y_l^m(theta, phi), Condon-Shortley phase, orthonormal on the sphere.
std::complex<double> spherical_harmonic(int l, int m, double cos_theta, double phi);

// Numerically evaluates sum_{m_l} int Y_l^{m_l} Y_l^{m_l*} Y_s^{m_s} dOmega
// by Gauss-Legendre (64 nodes in cos theta) x trapezoid (128 nodes in phi).
// Equals (2l+1)/sqrt(4 pi) when s = m_s = 0 and vanishes otherwise.
double angular_selection_sum(int l, int s, int m_s);

struct AdditionTheoremResult {
    double value;           // partial multipole sum up to s_max
    bool slow_convergence;  // set when |xi| ~ |tau| (ratio near 1)
};

// Partial sum of the spherical-harmonic addition expansion of 1/|xi - tau|.
AdditionTheoremResult addition_theorem_check(const Vec3& xi, const Vec3& tau, int s_max);

} // namespace atomsg
