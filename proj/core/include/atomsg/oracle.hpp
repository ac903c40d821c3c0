#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atomsg/atom.hpp"
#include "atomsg/composite.hpp"  // Vec3
#include "atomsg/quadrature.hpp"
#include "atomsg/units.hpp"

namespace atomsg {

// Brute-force evaluations of the effective interaction that never touch the
// coefficient table or the incomplete-gamma code path. Only the radial
// function itself is shared with the closed form.

// kZ sum_(n,l) (2l+1) { Omega^-1 int_0^Omega R^2 xi^2 dxi
//                       + int_Omega^inf R^2 xi dxi }
// with an explicit split at xi = Omega (integrand kink) and the improper
// tail truncated where the integrand falls below 1e-18 of its peak.
double radial_oracle(int Z, const ShellConfig& shells, double omega,
                     const UnitSystem& u, const QuadratureConfig& qc = {},
                     double* remainder_bound = nullptr);

struct McConfig {
    long sample_count = 1'000'000;
    std::uint64_t seed = 1;
    long batch_size = 65536;  // fixed batches keep parallel == serial

    void validate() const;  // sample_count >= 1e4
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// Full 3D Monte-Carlo of sum_orbitals int |phi(xi)|^2 / |xi - Omega| d3xi,
// importance-sampled from |phi|^2 (radial inverse-CDF x uniform direction;
// the closed-shell m-sum makes the angular density uniform). Exercises the
// angular reduction as well as the radial integrals.
McEstimate mc_oracle(int Z, const ShellConfig& shells, const Vec3& omega_vec,
                     const UnitSystem& u, const McConfig& mc = {});

struct CrossValidationRow {
    double omega = 0.0;
    double closed = 0.0;
    double quad = 0.0;
    std::optional<double> mc;
    std::optional<double> mc_stderr;
    double rel_dev = 0.0;  // |closed - quad| / max(|quad|, tiny)
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    double max_rel_dev = 0.0;
    double rel_tolerance = 0.0;
    bool pass = false;
};

// Closed form vs radial quadrature on every grid point; the MC column is
// evaluated on at most mc_points evenly spaced rows (it is the slow one).
CrossValidationReport cross_validate(int Z, const ShellConfig& shells,
                                     const std::vector<double>& omega_grid,
                                     const UnitSystem& u, double rel_tolerance,
                                     const QuadratureConfig& qc = {},
                                     const std::optional<McConfig>& mc = std::nullopt,
                                     int mc_points = 5);

} // namespace atomsg
