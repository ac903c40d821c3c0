#pragma once

#include <vector>

#include "atomsg/atom.hpp"
#include "atomsg/rational.hpp"

namespace atomsg {

// One exact coefficient of the closed-shell interaction expansion:
//   C(n,l,g,t) = (2l+1)/(2n 2^(2(n-l-1)))
//              * binom(2(n-l-1)-2g, n-l-1-g)
//              * (2g)!/(g!(2l+1+g)!)
//              * binom(2g+2(2l+1), 2g-t)
//              * (-2)^t/t!
// with g in [0, n-l-1] and t in [0, 2g].
struct CoefficientEntry {
    int n, l, g, t;
    BigRational c;
};

// Per-(n,l) evaluation block prepared for floating-point assembly. The
// factorials are folded into the exact coefficients first, so the
// float-side brackets stay regularized in [0,1]:
//   V = kZ sum_nl { [sum_t t1 * P(2l+t+2, x)] / Omega
//                   + (Z/a) [sum_t t2 * Q(2l+t+1, x)] },  x = 2 Z Omega/(n a)
// where P/Q are the regularized lower/upper gamma sums,
// t1 = C*(2l+t+2)! and t2 = C*(2l+t+1)!*2/n.
struct OrbitalTermBlock {
    int n, l;
    std::vector<int> k_lower;   // 2l+t+2 per term
    std::vector<int> k_upper;   // 2l+t+1 per term
    std::vector<double> t_lower;  // double(C * (2l+t+2)!)
    std::vector<double> t_upper;  // double(C * (2l+t+1)! * 2/n)
};

struct CoefficientTable {
    std::vector<CoefficientEntry> entries;
    std::vector<OrbitalTermBlock> blocks;
    bool spin_doubling = false;

    // Exact sum_{g,t} C (2l+t+2)!; equals 2l+1 for every shell.
    BigRational lower_weight_sum(int n, int l) const;
    // Exact sum_{g,t} C (2l+t+1)!; equals (2l+1)/(2n) for every shell.
    BigRational upper_weight_sum(int n, int l) const;
};

// Assembles the exact table for the given shells. n > 12 throws
// (factorial-size guard).
CoefficientTable build_coefficients(const ShellConfig& shells);

// Single exact coefficient, exposed for spot tests.
BigRational coefficient(int n, int l, int g, int t);

} // namespace atomsg
