#include "atomsg/rational.hpp"

namespace atomsg {

BigInt factorial_exact(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial_exact(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt num = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        num /= (i + 1);  // exact: product of j consecutive integers divides by j!
    }
    return num;
}

} // namespace atomsg
