#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "atomsg/atom.hpp"
#include "atomsg/units.hpp"

namespace atomsg {

using Vec3 = std::array<double, 3>;

struct ParticleSet {
    std::vector<Vec3> positions;
    std::vector<double> masses;

    std::size_t size() const { return positions.size(); }
    void validate() const;
};

// Relative-coordinate pairing. The choice is not unique; the default star
// topology takes rho_alpha = r_{alpha+1} - r_1.
enum class RelScheme { star };

struct CmRelDecomposition {
    Vec3 r_cm{};
    std::vector<Vec3> rel_coords;       // rho_alpha, alpha = 1..N-1
    std::vector<double> weights;        // omega_alpha = m_{alpha+1}/M
    std::vector<double> reduced_masses; // mu_alpha = m_{alpha+1}(M-m_{alpha+1})/M
    double total_mass = 0.0;
    std::vector<double> masses;         // original masses, kept for recompose
    RelScheme scheme = RelScheme::star;
};

// N < 2 throws std::domain_error: a structureless particle has no relative
// system R (the free-electron case).
CmRelDecomposition decompose(const ParticleSet& ps, RelScheme scheme = RelScheme::star);

// Inverse transform; reproduces the original positions.
std::vector<Vec3> recompose(const CmRelDecomposition& d);

struct NucleusMasses {
    double M_nucleus;   // Z m_p + (A-Z) m_n
    double mu_reduced;  // (1 - 1/A) m with m_n = m_p = m
    double M_atom;      // Z (m_e + m_p) + (A-Z) m_n
    bool degenerate;    // A = 1: no relative system
};

NucleusMasses nucleus_masses(const AtomSpec& atom, const UnitSystem& u);

// Mass-polarization cross term of the R kinetic energy (pairwise
// m_{eta+1} m_{nu+1} rho'_eta . rho'_nu / M over A+Z-1 coordinates).
// Recorded for completeness of the decomposition; never evaluated or
// evolved anywhere in this codebase.
struct MassPolarizationTerm {
    std::size_t coordinate_count = 0;  // A+Z-1 for the atom-as-whole split
    double total_mass = 0.0;
};

// Separability thresholds. The source estimates are order-of-magnitude
// only, so these live in config rather than buried constants.
struct KappaThresholds {
    double electron = 1e-2;  // kappa1, kappa2 below -> electrons separable
    double cm_r = 1e-3;      // kappa3 below -> CM and R separable
};

struct KappaParams {
    double kappa1;  // m_e / M
    double kappa2;  // max_alpha m_e / mu_alpha
    double kappa3;  // mu / M, mu = min_alpha mu_alpha
    double kappa;   // max(kappa1, kappa2)
    double adiabatic_error_bound;  // kappa^(3/4)
    bool electrons_separable;
    bool cm_r_separable;
};

// Requires A >= 2 (kappa3 undefined otherwise).
KappaParams kappa_params(const AtomSpec& atom, const UnitSystem& u,
                         const KappaThresholds& thresholds = {});

struct YukawaParams {
    double gamma_sq;      // coupling, energy*length
    double mu_range_inv;  // inverse range, 1/length
    void validate() const;
};

// -gamma^2 exp(-mu r)/r; r <= 0 throws (singularity).
double yukawa(double r, const YukawaParams& p);

} // namespace atomsg
