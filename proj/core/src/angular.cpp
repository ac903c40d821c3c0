#include "atomsg/angular.hpp"

#include <cmath>
#include <stdexcept>

#include "atomsg/quadrature.hpp"

namespace atomsg {

namespace {

// Fully normalized associated Legendre P~_l^m(cos theta) for m >= 0, so that
// Y_l^m = P~_l^m(cos theta) e^(i m phi). Includes the Condon-Shortley (-1)^m.
double norm_assoc_legendre(int l, int m, double x) {
    // sectoral seed P~_m^m
    double pmm = 1.0 / std::sqrt(4.0 * M_PI);
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));  // sin theta
    for (int k = 1; k <= m; ++k)
        pmm *= -s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    if (l == m) return pmm;

    double pm1 = pmm;
    double p = std::sqrt(2.0 * m + 3.0) * x * pmm;  // P~_{m+1}^m
    for (int ll = m + 2; ll <= l; ++ll) {
        const double A = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        const double B = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(m) * m) /
                                   (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        const double pnext = A * (x * p - B * pm1);
        pm1 = p;
        p = pnext;
    }
    return p;
}

} // namespace

std::complex<double> spherical_harmonic(int l, int m, double cos_theta, double phi) {
    if (l < 0 || std::abs(m) > l)
        throw std::domain_error("spherical_harmonic: requires |m| <= l, l >= 0");
    const int ma = std::abs(m);
    const double plm = norm_assoc_legendre(l, ma, cos_theta);
    std::complex<double> y = plm * std::polar(1.0, ma * phi);
    if (m < 0) {
        y = std::conj(y);
        if (ma % 2 == 1) y = -y;
    }
    return y;
}

double angular_selection_sum(int l, int s, int m_s) {
    if (l < 0 || s < 0 || std::abs(m_s) > s)
        throw std::domain_error("angular_selection_sum: invalid quantum numbers");

    const GaussRule& gl = gauss_legendre(64);
    const int n_phi = 128;
    const double dphi = 2.0 * M_PI / n_phi;

    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double ct = gl.nodes[i];
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * dphi;
            double density = 0.0;  // sum_m |Y_l^m|^2, real by construction
            for (int m = -l; m <= l; ++m)
                density += std::norm(spherical_harmonic(l, m, ct, phi));
            acc += gl.weights[i] * dphi * density *
                   spherical_harmonic(s, m_s, ct, phi);
        }
    }
    // the phi trapezoid kills the imaginary part exactly for |m_s| < n_phi
    return acc.real();
}

AdditionTheoremResult addition_theorem_check(const Vec3& xi, const Vec3& tau, int s_max) {
    auto radius = [](const Vec3& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    const double rxi = radius(xi), rtau = radius(tau);
    if (!(rxi > 0.0) || !(rtau > 0.0))
        throw std::domain_error("addition_theorem_check: zero-length vector");

    const double rless = std::min(rxi, rtau), rgreater = std::max(rxi, rtau);
    AdditionTheoremResult res{};
    res.slow_convergence = std::abs(rxi - rtau) < 1e-6 * rgreater;

    const double ct_xi = xi[2] / rxi, phi_xi = std::atan2(xi[1], xi[0]);
    const double ct_tau = tau[2] / rtau, phi_tau = std::atan2(tau[1], tau[0]);

    double sum = 0.0;
    double ratio_pow = 1.0 / rgreater;  // rless^s / rgreater^(s+1)
    for (int s = 0; s <= s_max; ++s) {
        std::complex<double> inner = 0.0;
        for (int ms = -s; ms <= s; ++ms)
            inner += std::conj(spherical_harmonic(s, ms, ct_tau, phi_tau)) *
                     spherical_harmonic(s, ms, ct_xi, phi_xi);
        sum += ratio_pow * (4.0 * M_PI / (2.0 * s + 1.0)) * inner.real();
        ratio_pow *= rless / rgreater;
    }
    res.value = sum;
    return res;
}

} // namespace atomsg
