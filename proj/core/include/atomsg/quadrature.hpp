#pragma once

#include <functional>
#include <vector>

namespace atomsg {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_subdivisions = 4000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int panels = 0;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton-refined.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);  // cached per n

// Adaptive bisection with a 15-point Gauss panel; error estimated by
// comparing each panel against its two halves. Throws ConvergenceError
// (carrying the best estimate) when the budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, const QuadratureConfig& cfg = {});

} // namespace atomsg
