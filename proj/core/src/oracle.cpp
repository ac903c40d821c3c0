#include "atomsg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "atomsg/parallel.hpp"
#include "atomsg/potential.hpp"
#include "atomsg/radial.hpp"

namespace atomsg {

namespace {

// Truncation point for the improper tail: walk outward in units of the
// orbital decay scale until R^2 xi (the slower-decaying integrand) drops
// below 1e-18 of its peak. The Laguerre nodes of R sit at integer
// multiples of the scale for several (n,l), so a single sub-threshold
// sample is not trusted: three offset probes must agree before the point
// counts as tail rather than node.
double tail_cutoff(const RadialFunction& rf, double start) {
    const double step = rf.scale();
    double peak = 0.0;
    for (double s = 0.5 * step; s < 400.0 * step; s += step) {
        const double r = radial_eval(rf, s);
        peak = std::max(peak, r * r * s);
    }
    auto below = [&](double xi) {
        const double r = radial_eval(rf, xi);
        return r * r * xi < 1e-18 * peak;
    };
    double xi = std::max(start, step) + 4.0 * step;
    while (xi < 1e4 * step) {
        if (below(xi) && below(xi + 0.37 * step) && below(xi + 0.74 * step))
            return xi;
        xi += step;
    }
    return xi;
}

// Crude but safe bound on the dropped tail: beyond the cutoff the integrand
// decays at least like exp(-xi/scale) once the polynomial part is dominated,
// so f(cutoff) * scale bounds the remainder up to a factor ~2.
double tail_remainder_bound(const RadialFunction& rf, double cutoff) {
    const double r = radial_eval(rf, cutoff);
    return 2.0 * r * r * cutoff * rf.scale();
}

} // namespace

// Integrate f over [a, b] with geometric breakpoints on the orbital scale.
// At large Z the density is a needle of width ~scale inside a much longer
// interval; plain bisection can land every sample outside it and read the
// panel as zero, so the presplit pins panels to where the mass lives.
double integrate_scaled(const std::function<double(double)>& f, double a,
                        double b, double scale, const QuadratureConfig& qc) {
    if (!(b > a)) return 0.0;
    std::vector<double> breaks{a};
    for (double s = scale; a + s < b; s *= 4.0) breaks.push_back(a + s);
    breaks.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += integrate_adaptive(f, breaks[i], breaks[i + 1], qc).value;
    return total;
}

double radial_oracle(int Z, const ShellConfig& shells, double omega,
                     const UnitSystem& u, const QuadratureConfig& qc,
                     double* remainder_bound) {
    if (omega < 0.0) throw std::domain_error("radial_oracle: Omega must be >= 0");
    shells.validate();
    qc.validate();

    double total = 0.0, dropped = 0.0;
    for (const Orbital& o : shells.occupied) {
        const RadialFunction rf{o.n, o.l, double(Z), u.a_mu};
        auto density = [&](double xi) {
            const double r = radial_eval(rf, xi);
            return r * r;
        };
        double piece = 0.0;
        const double cutoff = tail_cutoff(rf, omega);
        if (omega > 0.0) {
            piece += integrate_scaled(
                         [&](double xi) { return density(xi) * xi * xi; }, 0.0,
                         omega, rf.scale(), qc) /
                     omega;
        }
        piece += integrate_scaled([&](double xi) { return density(xi) * xi; },
                                  omega, cutoff, rf.scale(), qc);
        total += shells.multiplicity(o) * piece;
        dropped += shells.multiplicity(o) * tail_remainder_bound(rf, cutoff);
    }
    if (remainder_bound) *remainder_bound = u.k * Z * dropped;
    return u.k * Z * total;
}

void McConfig::validate() const {
    if (sample_count < 10'000)
        throw std::domain_error("McConfig: sample_count must be >= 1e4");
    if (batch_size < 1) throw std::domain_error("McConfig: batch_size must be >= 1");
}

namespace {

// Radial sampling table: cumulative trapezoid of R^2 xi^2 on a dense grid.
struct RadialSampler {
    std::vector<double> xi;
    std::vector<double> cdf;  // normalized to 1 at the end

    static RadialSampler build(const RadialFunction& rf) {
        const int n_pts = 1 << 16;
        RadialSampler s;
        const double hi = tail_cutoff(rf, 0.0);
        s.xi.resize(n_pts + 1);
        s.cdf.resize(n_pts + 1);
        const double h = hi / n_pts;
        double acc = 0.0, prev = 0.0;
        s.xi[0] = 0.0;
        s.cdf[0] = 0.0;
        for (int i = 1; i <= n_pts; ++i) {
            const double x = i * h;
            const double r = radial_eval(rf, x);
            const double f = r * r * x * x;
            acc += 0.5 * (prev + f) * h;
            prev = f;
            s.xi[i] = x;
            s.cdf[i] = acc;
        }
        for (double& c : s.cdf) c /= acc;
        return s;
    }

    double sample(double unit) const {
        auto it = std::lower_bound(cdf.begin(), cdf.end(), unit);
        if (it == cdf.begin()) return xi.front();
        if (it == cdf.end()) return xi.back();
        const std::size_t hi_idx = it - cdf.begin();
        const std::size_t lo_idx = hi_idx - 1;
        const double span = cdf[hi_idx] - cdf[lo_idx];
        const double w = span > 0.0 ? (unit - cdf[lo_idx]) / span : 0.0;
        return xi[lo_idx] + w * (xi[hi_idx] - xi[lo_idx]);
    }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

McEstimate mc_oracle(int Z, const ShellConfig& shells, const Vec3& omega_vec,
                     const UnitSystem& u, const McConfig& mc) {
    shells.validate();
    mc.validate();

    // samplers and mixture weights per (n,l)
    std::vector<RadialSampler> samplers;
    std::vector<double> weight_cdf;
    double wsum = 0.0;
    for (const Orbital& o : shells.occupied) {
        samplers.push_back(RadialSampler::build({o.n, o.l, double(Z), u.a_mu}));
        wsum += shells.multiplicity(o);
        weight_cdf.push_back(wsum);
    }
    for (double& w : weight_cdf) w /= wsum;

    const long n_batches = (mc.sample_count + mc.batch_size - 1) / mc.batch_size;
    std::vector<double> batch_sum(n_batches, 0.0), batch_sumsq(n_batches, 0.0);
    std::vector<long> batch_n(n_batches, 0);

    parallel_for(static_cast<std::size_t>(n_batches), [&](std::size_t b) {
        std::mt19937_64 rng(splitmix64(mc.seed + 0x51ed270b + b));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const long lo = static_cast<long>(b) * mc.batch_size;
        const long hi = std::min<long>(lo + mc.batch_size, mc.sample_count);
        double s = 0.0, s2 = 0.0;
        for (long i = lo; i < hi; ++i) {
            // orbital from the multiplicity mixture
            const double pick = unit(rng);
            std::size_t orb = std::lower_bound(weight_cdf.begin(), weight_cdf.end(),
                                               pick) -
                              weight_cdf.begin();
            if (orb >= samplers.size()) orb = samplers.size() - 1;
            const double xi = samplers[orb].sample(1.0 - unit(rng));  // (0,1]
            const double ct = 1.0 - 2.0 * unit(rng);
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            const double phi = 2.0 * M_PI * unit(rng);
            const double dx = xi * st * std::cos(phi) - omega_vec[0];
            const double dy = xi * st * std::sin(phi) - omega_vec[1];
            const double dz = xi * ct - omega_vec[2];
            const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
            const double f = 1.0 / dist;  // a.s. finite: continuous sampling
            s += f;
            s2 += f * f;
        }
        batch_sum[b] = s;
        batch_sumsq[b] = s2;
        batch_n[b] = hi - lo;
    });

    double s = 0.0, s2 = 0.0;
    long n = 0;
    for (long b = 0; b < n_batches; ++b) {  // fixed order: deterministic
        s += batch_sum[b];
        s2 += batch_sumsq[b];
        n += batch_n[b];
    }
    const double mean_f = s / n;
    const double var_f = std::max(0.0, s2 / n - mean_f * mean_f);
    const double scale = u.k * Z * wsum;
    McEstimate est;
    est.mean = scale * mean_f;
    est.std_error = scale * std::sqrt(var_f / n);
    est.samples = n;
    return est;
}

CrossValidationReport cross_validate(int Z, const ShellConfig& shells,
                                     const std::vector<double>& omega_grid,
                                     const UnitSystem& u, double rel_tolerance,
                                     const QuadratureConfig& qc,
                                     const std::optional<McConfig>& mc,
                                     int mc_points) {
    if (omega_grid.empty())
        throw std::invalid_argument("cross_validate: empty grid");

    const CoefficientTable table = build_coefficients(shells);
    CrossValidationReport rep;
    rep.rel_tolerance = rel_tolerance;
    rep.rows.resize(omega_grid.size());

    parallel_for(omega_grid.size(), [&](std::size_t i) {
        CrossValidationRow row;
        row.omega = omega_grid[i];
        row.closed = potential_closed_form(Z, table, row.omega, u);
        row.quad = radial_oracle(Z, shells, row.omega, u, qc);
        row.rel_dev = std::abs(row.closed - row.quad) /
                      std::max(std::abs(row.quad), 1e-300);
        rep.rows[i] = row;
    });

    if (mc) {
        const std::size_t stride =
            std::max<std::size_t>(1, omega_grid.size() / std::max(1, mc_points));
        for (std::size_t i = 0; i < omega_grid.size(); i += stride) {
            const McEstimate est =
                mc_oracle(Z, shells, {0.0, 0.0, omega_grid[i]}, u, *mc);
            rep.rows[i].mc = est.mean;
            rep.rows[i].mc_stderr = est.std_error;
        }
    }

    for (const auto& row : rep.rows)
        rep.max_rel_dev = std::max(rep.max_rel_dev, row.rel_dev);
    rep.pass = rep.max_rel_dev <= rel_tolerance;
    return rep;
}

} // namespace atomsg
