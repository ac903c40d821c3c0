#include "atomsg/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace atomsg {

namespace {

constexpr double kExpUnderflowX = 700.0;

// sum_{m=0..n} x^m/m! by forward recurrence; all terms positive.
double partial_exp_sum(int n, double x) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= n; ++m) {
        term *= x / m;
        sum += term;
    }
    return sum;
}

void check_args(int n, double x) {
    if (n < 0) throw std::domain_error("incomplete gamma: order must be >= 0");
    if (x < 0.0) throw std::domain_error("incomplete gamma: x must be >= 0");
}

} // namespace

double factorial(int n) {
    if (n < 0 || n > 170) throw std::domain_error("factorial: n out of double range");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double reg_upper_gamma(int n, double x) {
    check_args(n, x);
    if (x > kExpUnderflowX) return 0.0;
    // Gamma(1+n,x)/n! = e^-x sum_{m<=n} x^m/m!; all terms positive.
    return std::exp(-x) * partial_exp_sum(n, x);
}

double reg_lower_gamma(int n, double x) {
    check_args(n, x);
    if (x > kExpUnderflowX) return 1.0;
    if (x < n + 1.0) {
        // 1 - e^-x sum_{m<=n} cancels badly for small x. Use the exact
        // complement of the exponential series:
        //   1 - e^-x sum_{m<=n} x^m/m! = e^-x sum_{m>n} x^m/m!
        // whose terms are positive and eventually decay geometrically.
        double term = 1.0;
        for (int m = 1; m <= n + 1; ++m) term *= x / m;  // x^(n+1)/(n+1)!
        double sum = 0.0;
        int m = n + 1;
        while (true) {
            sum += term;
            ++m;
            term *= x / m;
            if (term < sum * 1e-18 || m > n + 400) break;
        }
        return std::exp(-x) * sum;
    }
    return 1.0 - std::exp(-x) * partial_exp_sum(n, x);
}

double lower_gamma_int(int n, double x) { return factorial(n) * reg_lower_gamma(n, x); }

double upper_gamma_int(int n, double x) { return factorial(n) * reg_upper_gamma(n, x); }

} // namespace atomsg
