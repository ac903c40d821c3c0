#include "atomsg/coefficients.hpp"

#include <stdexcept>

namespace atomsg {

BigRational coefficient(int n, int l, int g, int t) {
    if (n < 1 || l < 0 || l >= n) throw std::domain_error("coefficient: invalid (n,l)");
    if (g < 0 || g > n - l - 1) throw std::domain_error("coefficient: g out of range");
    if (t < 0 || t > 2 * g) throw std::domain_error("coefficient: t out of range");

    const int p = n - l - 1;
    BigRational c(2 * l + 1, BigInt(2 * n) << (2 * p));
    c *= BigRational(binomial_exact(2 * p - 2 * g, p - g));
    c *= BigRational(factorial_exact(2 * g),
                     factorial_exact(g) * factorial_exact(2 * l + 1 + g));
    c *= BigRational(binomial_exact(2 * g + 2 * (2 * l + 1), 2 * g - t));
    BigInt two_pow_t = BigInt(1) << t;
    c *= BigRational((t % 2 == 0) ? two_pow_t : -two_pow_t, factorial_exact(t));
    return c;
}

CoefficientTable build_coefficients(const ShellConfig& shells) {
    shells.validate();
    if (shells.n_max() > 12)
        throw std::domain_error(
            "build_coefficients: n > 12 exceeds the factorial-size guard");

    CoefficientTable table;
    table.spin_doubling = shells.spin_doubling;
    const BigRational spin_factor(shells.spin_doubling ? 2 : 1);

    for (const Orbital& o : shells.occupied) {
        OrbitalTermBlock block{o.n, o.l, {}, {}, {}, {}};
        for (int g = 0; g <= o.n - o.l - 1; ++g) {
            for (int t = 0; t <= 2 * g; ++t) {
                BigRational c = spin_factor * coefficient(o.n, o.l, g, t);
                table.entries.push_back({o.n, o.l, g, t, c});
                const int k1 = 2 * o.l + t + 2;
                const int k2 = 2 * o.l + t + 1;
                block.k_lower.push_back(k1);
                block.k_upper.push_back(k2);
                block.t_lower.push_back(to_double(c * BigRational(factorial_exact(k1))));
                block.t_upper.push_back(to_double(
                    c * BigRational(2 * factorial_exact(k2), o.n)));
            }
        }
        table.blocks.push_back(std::move(block));
    }
    return table;
}

BigRational CoefficientTable::lower_weight_sum(int n, int l) const {
    BigRational s = 0;
    for (const auto& e : entries)
        if (e.n == n && e.l == l)
            s += e.c * BigRational(factorial_exact(2 * l + e.t + 2));
    return s;
}

BigRational CoefficientTable::upper_weight_sum(int n, int l) const {
    BigRational s = 0;
    for (const auto& e : entries)
        if (e.n == n && e.l == l)
            s += e.c * BigRational(factorial_exact(2 * l + e.t + 1));
    return s;
}

} // namespace atomsg
