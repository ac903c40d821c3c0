#include "atomsg/composite.hpp"

#include <cmath>
#include <stdexcept>

namespace atomsg {

void ParticleSet::validate() const {
    if (positions.size() != masses.size())
        throw std::invalid_argument("ParticleSet: positions/masses length mismatch");
    for (double m : masses)
        if (!(m > 0.0)) throw std::domain_error("ParticleSet: masses must be positive");
}

CmRelDecomposition decompose(const ParticleSet& ps, RelScheme scheme) {
    ps.validate();
    const std::size_t n = ps.size();
    if (n < 2)
        throw std::domain_error(
            "decompose: no relative system R exists for fewer than 2 particles");

    CmRelDecomposition d;
    d.scheme = scheme;
    d.masses = ps.masses;
    for (double m : ps.masses) d.total_mass += m;

    for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += ps.masses[i] * ps.positions[i][c];
        d.r_cm[c] = s / d.total_mass;
    }

    // star topology: rho_alpha = r_{alpha+1} - r_1
    d.rel_coords.resize(n - 1);
    d.weights.resize(n - 1);
    d.reduced_masses.resize(n - 1);
    for (std::size_t a = 0; a < n - 1; ++a) {
        for (int c = 0; c < 3; ++c)
            d.rel_coords[a][c] = ps.positions[a + 1][c] - ps.positions[0][c];
        const double m = ps.masses[a + 1];
        d.weights[a] = m / d.total_mass;
        d.reduced_masses[a] = m * (d.total_mass - m) / d.total_mass;
    }
    return d;
}

std::vector<Vec3> recompose(const CmRelDecomposition& d) {
    const std::size_t n = d.masses.size();
    if (n < 2 || d.rel_coords.size() != n - 1 || d.weights.size() != n - 1)
        throw std::invalid_argument("recompose: malformed decomposition");

    // r_1 = R_cm - sum_alpha omega_alpha rho_alpha, then r_{alpha+1} = r_1 + rho_alpha
    std::vector<Vec3> out(n);
    for (int c = 0; c < 3; ++c) {
        double shift = 0.0;
        for (std::size_t a = 0; a < n - 1; ++a)
            shift += d.weights[a] * d.rel_coords[a][c];
        out[0][c] = d.r_cm[c] - shift;
    }
    for (std::size_t a = 0; a < n - 1; ++a)
        for (int c = 0; c < 3; ++c)
            out[a + 1][c] = out[0][c] + d.rel_coords[a][c];
    return out;
}

NucleusMasses nucleus_masses(const AtomSpec& atom, const UnitSystem& u) {
    atom.validate();
    NucleusMasses m{};
    m.M_nucleus = atom.Z * u.m_p + (atom.A - atom.Z) * u.m_n;
    m.M_atom = atom.Z * (u.m_e + u.m_p) + (atom.A - atom.Z) * u.m_n;
    // mu = (1 - 1/A) m under the m_n = m_p = m simplification
    m.mu_reduced = (1.0 - 1.0 / atom.A) * u.m_p;
    m.degenerate = (atom.A == 1);
    return m;
}

KappaParams kappa_params(const AtomSpec& atom, const UnitSystem& u,
                         const KappaThresholds& thresholds) {
    atom.validate();
    if (atom.A < 2)
        throw std::domain_error("kappa_params: A >= 2 required (kappa3 undefined)");

    const NucleusMasses m = nucleus_masses(atom, u);
    KappaParams kp{};
    kp.kappa1 = u.m_e / m.M_nucleus;
    kp.kappa2 = u.m_e / m.mu_reduced;  // mu_alpha ~ mu for all alpha
    kp.kappa3 = m.mu_reduced / m.M_nucleus;
    kp.kappa = std::max(kp.kappa1, kp.kappa2);
    kp.adiabatic_error_bound = std::pow(kp.kappa, 0.75);
    kp.electrons_separable =
        kp.kappa1 <= thresholds.electron && kp.kappa2 <= thresholds.electron;
    kp.cm_r_separable = kp.kappa3 <= thresholds.cm_r;
    return kp;
}

void YukawaParams::validate() const {
    if (!(gamma_sq > 0.0) || !(mu_range_inv > 0.0))
        throw std::domain_error("YukawaParams: gamma_sq and mu_range_inv must be positive");
}

double yukawa(double r, const YukawaParams& p) {
    p.validate();
    if (!(r > 0.0))
        throw std::domain_error("yukawa: r must be positive (1/r singularity)");
    return -p.gamma_sq * std::exp(-p.mu_range_inv * r) / r;
}

} // namespace atomsg
