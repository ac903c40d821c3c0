#include "atomsg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "atomsg/errors.hpp"

namespace atomsg {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::domain_error("QuadratureConfig: max_subdivisions must be >= 1");
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& g = gauss_legendre(15);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

struct Panel {
    double a, b, value;
};

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        QuadratureResult r = integrate_adaptive(f, b, a, cfg);
        r.value = -r.value;
        return r;
    }

    std::vector<Panel> stack{{a, b, gauss_panel(f, a, b)}};
    double total = 0.0, err_accum = 0.0;
    int panels_done = 0, splits = 0;

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double left = gauss_panel(f, p.a, mid);
        const double right = gauss_panel(f, mid, p.b);
        const double refined = left + right;
        const double err = std::abs(refined - p.value);

        // local acceptance against the budget share of this panel
        const double scale = std::max(std::abs(total) + std::abs(refined), 1.0);
        const double tol =
            std::max(cfg.abs_tol, cfg.rel_tol * scale) * (p.b - p.a) / (b - a);
        if (err < tol || (p.b - p.a) < 1e-15 * (b - a)) {
            total += refined;
            err_accum += err;
            ++panels_done;
            continue;
        }
        if (++splits > cfg.max_subdivisions) {
            double best = total + refined;
            for (const Panel& q : stack) best += q.value;
            throw ConvergenceError("integrate_adaptive: subdivision budget exhausted",
                                   best, err_accum + err);
        }
        stack.push_back({p.a, mid, left});
        stack.push_back({mid, p.b, right});
    }
    return {total, err_accum, panels_done};
}

} // namespace atomsg
