#pragma once

#include <complex>
#include <string>

#include "atomsg/potential.hpp"
#include "atomsg/units.hpp"

namespace atomsg {

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int points = 0;

    double step() const { return (max - min) / (points - 1); }
    double at(int i) const { return min + i * step(); }
};

enum class CouplingSource { closed_form, analytic, profile };

struct CouplingSpec {
    bool enabled = false;
    double lambda = 0.0;       // effective mass weight multiplying rho
    double offset = 0.0;       // c-number shift of the CM coordinate
    CouplingSource source = CouplingSource::closed_form;
    int Z = 10;                // closed-shell Z for closed-form/analytic
    std::string profile_path;  // CSV (omega,value) for source = profile
};

// Reduced-dimensional SG model: 1D CM x 1D R x spin-1/2. The spin operator
// in H_CM+S = mu_B b' x S_z has eigenvalues +-1, so the branch
// accelerations are -+ mu_B b' / M.
struct SimConfig {
    GridSpec cm_grid;
    GridSpec r_grid;
    double mass_cm = 0.0;
    double mass_r = 0.0;
    double field_gradient = 0.0;  // b'
    double omega_r = 1.0;         // harmonic frequency of the R self-potential
    CouplingSpec coupling;
    double packet_center = 0.0;
    double packet_width = 1.0;
    double packet_momentum = 0.0;
    std::complex<double> spin_plus{0.70710678118654752, 0.0};   // S_z = +1 amplitude
    std::complex<double> spin_minus{0.70710678118654752, 0.0};  // S_z = -1 amplitude
    double dt = 0.0;
    double total_time = 0.0;
    int snapshot_stride = 10;
    bool dump_states = false;
    bool keep_states = false;  // retain every snapshot in the trajectory
    UnitSystem units;

    // 2 hbar^2/(M dx^2) + 2 hbar^2/(mu drho^2), the top of the
    // finite-difference kinetic spectrum.
    double max_kinetic_eigenvalue() const;

    // Throws ConfigError for schema-level problems and StabilityError when
    // dt * max_kinetic_eigenvalue >= 0.5.
    void validate() const;
};

// key = value format, '#' comments, dotted key names documented in the
// README. Unknown or missing keys throw ConfigError naming the key.
SimConfig parse_sim_config(const std::string& text);
SimConfig load_sim_config(const std::string& path);

} // namespace atomsg
