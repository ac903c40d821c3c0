#pragma once

#include <stdexcept>
#include <string>

namespace atomsg {

// Adaptive quadrature ran out of subdivisions. Carries the best estimate
// and the error bound it reached so callers can report partial results.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

// Simulator config fails the dt * max-kinetic-eigenvalue guard.
class StabilityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or incomplete simulation config; message names the offending key.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NaN/Inf appeared mid-evolution. Carries the index of the last good snapshot.
class NumericalBlowupError : public std::runtime_error {
public:
    NumericalBlowupError(const std::string& what, std::size_t last_good)
        : std::runtime_error(what), last_good_snapshot(last_good) {}
    std::size_t last_good_snapshot;
};

} // namespace atomsg
