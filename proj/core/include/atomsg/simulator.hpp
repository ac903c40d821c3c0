#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "atomsg/sim_config.hpp"

namespace atomsg {

// Wavefunction over (CM grid) x (R grid) x (spin 2-level). Index layout:
// (ix * nrho + ir) * 2 + s with s = 0 for S_z = +1, s = 1 for S_z = -1.
struct CompositeState {
    int nx = 0, nrho = 0;
    double dx = 0.0, drho = 0.0;
    double time = 0.0;
    std::vector<std::complex<double>> amp;

    std::complex<double>& at(int ix, int ir, int s) {
        return amp[(static_cast<std::size_t>(ix) * nrho + ir) * 2 + s];
    }
    const std::complex<double>& at(int ix, int ir, int s) const {
        return amp[(static_cast<std::size_t>(ix) * nrho + ir) * 2 + s];
    }
    double norm() const;  // sqrt(sum |amp|^2 dx drho)
};

// CM+S density matrix after tracing out R. Entries carry the dx measure so
// that trace() is a plain matrix trace and purity a plain Frobenius sum.
// Row/column index: s * nx + ix.
struct ReducedDensityMatrix {
    int nx = 0;
    double dx = 0.0;
    std::vector<std::complex<double>> rho;  // (2 nx)^2 row-major

    std::complex<double> at(int i, int j) const {
        return rho[static_cast<std::size_t>(i) * 2 * nx + j];
    }
    double trace_value = 0.0;
    double purity = 0.0;
    double branch_overlap = 0.0;  // overlap of R states conditioned on spin
};

struct SnapshotMetrics {
    double time = 0.0;
    double norm = 0.0;
    double purity = 0.0;          // Tr rho_{CM+S}^2 (= Tr rho_R^2, state pure)
    double branch_overlap = 0.0;
    double centroid_separation = 0.0;  // |<x>_+ - <x>_-|
    double energy = 0.0;
};

struct Trajectory {
    SimConfig config;
    std::vector<SnapshotMetrics> metrics;
    std::vector<CompositeState> states;  // populated when config.keep_states
    CompositeState final_state;
};

using SnapshotCallback =
    std::function<void(const CompositeState&, std::size_t snapshot_index)>;

// Second-order split evolution under T_CM + H_R + H_CM+S + H_CM+R:
// half potential phase, Cayley kinetic sweeps along x and rho, half phase.
// The coupling potential is V(|x + lambda rho - offset|). Throws
// StabilityError before stepping and NumericalBlowupError on NaN mid-run.
Trajectory evolve(const SimConfig& cfg, const SnapshotCallback& on_snapshot = {});

// Initial-state factory, exposed for tests: Gaussian CM packet x discrete
// ground state of the R Hamiltonian x normalized spin vector.
CompositeState initial_state(const SimConfig& cfg);

// Partial trace over R. Throws std::invalid_argument when the state norm
// deviates from 1 beyond 1e-8.
ReducedDensityMatrix reduce(const CompositeState& state);

// Metric time series of a stored trajectory (recomputed from states when
// present, else the series recorded during evolution).
std::vector<SnapshotMetrics> decoherence_metrics(const Trajectory& t);

struct RecurrenceReport {
    double threshold = 0.0;
    bool dropped_below = false;   // overlap ever fell below threshold
    double drop_time = 0.0;
    bool revival_detected = false;
    double revival_time = 0.0;      // first return above threshold
    double revival_amplitude = 0.0; // max overlap after the first drop; 0 if none
    double min_overlap = 1.0;
    double min_time = 0.0;
};

// Qualitative revival scan of the branch-overlap series. No decoherence- or
// recurrence-time estimate is attempted.
RecurrenceReport recurrence_probe(const Trajectory& t, double threshold = 0.5);

// "ATSG" state dump: magic, u32 version, u32 nx, u32 nrho, u32 nspin,
// f64 time, then little-endian complex64 (f32 re, f32 im) pairs,
// row-major x, rho, spin.
void dump_state(const CompositeState& state, const std::string& path);

} // namespace atomsg
