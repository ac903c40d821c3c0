#include "atomsg/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "atomsg/gamma.hpp"

namespace atomsg {

void RadialFunction::validate() const {
    if (n < 1 || l < 0 || l >= n)
        throw std::domain_error("RadialFunction: requires n >= 1 and 0 <= l < n");
    if (!(z_eff > 0.0) || !(a_mu > 0.0))
        throw std::domain_error("RadialFunction: z_eff and a_mu must be positive");
}

double laguerre(int k, int alpha, double x) {
    if (k < 0) throw std::domain_error("laguerre: k must be >= 0");
    if (k == 0) return 1.0;
    double lm1 = 1.0;              // L_0
    double l0 = 1.0 + alpha - x;   // L_1
    for (int j = 1; j < k; ++j) {
        double lp1 = ((2.0 * j + 1.0 + alpha - x) * l0 - (j + alpha) * lm1) / (j + 1.0);
        lm1 = l0;
        l0 = lp1;
    }
    return l0;
}

std::vector<BigRational> laguerre_coeffs_exact(int k, int alpha) {
    // L_k^a(x) = sum_i (-1)^i binom(k+a, k-i) x^i / i!
    std::vector<BigRational> coeffs(k + 1);
    for (int i = 0; i <= k; ++i) {
        BigRational c(binomial_exact(k + alpha, k - i), factorial_exact(i));
        if (i % 2 == 1) c = -c;
        coeffs[i] = c;
    }
    return coeffs;
}

double radial_eval(const RadialFunction& rf, double xi) {
    rf.validate();
    if (xi < 0.0) throw std::domain_error("radial_eval: xi must be >= 0");
    const double b = 2.0 * rf.z_eff / (rf.n * rf.a_mu);
    const double rho = b * xi;
    const double norm = std::sqrt(b * b * b * factorial(rf.n - rf.l - 1) /
                                  (2.0 * rf.n * factorial(rf.n + rf.l)));
    return norm * std::exp(-rho / 2.0) * std::pow(rho, rf.l) *
           laguerre(rf.n - rf.l - 1, 2 * rf.l + 1, rho);
}

} // namespace atomsg
