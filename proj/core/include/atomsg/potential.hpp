#pragma once

#include <string>
#include <vector>

#include "atomsg/atom.hpp"
#include "atomsg/coefficients.hpp"
#include "atomsg/rational.hpp"
#include "atomsg/units.hpp"

namespace atomsg {

// Tabulated effective CM-R interaction magnitude V(Omega) with provenance.
struct PotentialProfile {
    int Z = 0;
    ShellConfig shells;
    std::vector<double> omega_grid;
    std::vector<double> values;
    std::string source;  // "closed-form" | "radial-quadrature" | "monte-carlo"

    // Linear interpolation inside the grid; 1/Omega tail beyond it.
    double interpolate(double omega) const;
};

// Closed-form effective interaction at a single Omega. Omega = 0 takes the
// analytic-limit branch (the 1/Omega bracket vanishes there). Negative
// Omega throws std::domain_error.
double potential_closed_form(int Z, const ShellConfig& shells, double omega,
                             const UnitSystem& u);

// Same, amortizing the coefficient table across many Omega values.
double potential_closed_form(int Z, const CoefficientTable& table, double omega,
                             const UnitSystem& u);

PotentialProfile profile_closed_form(int Z, const ShellConfig& shells,
                                     const std::vector<double>& omega_grid,
                                     const UnitSystem& u);

struct OrbitalBeta {
    int n, l;
    BigRational beta_over_k;  // exact per-(n,l) contribution
};

struct BetaResult {
    int Z = 0;
    double beta = 0.0;              // energy*length, k folded in
    BigRational beta_over_k_exact;  // exact rational sum
    std::vector<OrbitalBeta> contributions;
};

// Large-Omega prefactor beta = k sum C (2l+t+2)! over all closed shells.
// Exact arithmetic throughout; non-closed-shell Z throws.
BetaResult beta(int z_closed, const UnitSystem& u);

struct ZScalingRow {
    int Z = 0;
    double v_at_ref = 0.0;     // V(Omega_ref)
    double linear_approx = 0.0;  // beta Z / Omega_ref
    double rel_deviation = 0.0;
    bool asymptotic = false;  // Z >= 10: exponential terms negligible
};

std::vector<ZScalingRow> z_scaling_report(const std::vector<int>& z_list,
                                          double omega_ref, const UnitSystem& u);

// Least-squares slope of log V vs log Z over the asymptotic rows.
double z_scaling_loglog_slope(const std::vector<ZScalingRow>& rows);

struct PointerBasisReport {
    double packet_width = 0.0;
    // V is a multiplication operator in Omega: <O|V|O'> = 0 for O != O'.
    // Recorded as a structural fact, not a measurement.
    bool position_basis_exactly_diagonal = true;
    std::vector<double> centers;
    std::vector<double> epsilon;  // |V(c+s) - V(c-s)| / V(c) per center
    // Gaussian packet pair centered at the profile's inner/outer thirds:
    double packet_center_1 = 0.0, packet_center_2 = 0.0;
    double diag_1 = 0.0, diag_2 = 0.0;     // <psi_i|V|psi_i>
    double offdiag = 0.0;                  // |<psi_1|V|psi_2>|
    double offdiag_over_diag = 0.0;
};

// Approximate-pointer-basis diagnostic: how close wave packets of the given
// width come to diagonalizing V.
PointerBasisReport pointer_basis_diagnostic(const PotentialProfile& profile,
                                            double packet_width);

} // namespace atomsg
