#include "atomsg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "atomsg/gamma.hpp"

namespace atomsg {

namespace {

// Kahan-compensated accumulator; the alternating coefficient sums lose
// digits without it at n >= 4.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

} // namespace

double potential_closed_form(int Z, const CoefficientTable& table, double omega,
                             const UnitSystem& u) {
    if (omega < 0.0)
        throw std::domain_error("potential_closed_form: Omega must be >= 0");

    Kahan total;
    for (const OrbitalTermBlock& b : table.blocks) {
        const double x = 2.0 * Z * omega / (b.n * u.a_mu);
        Kahan lower, upper;
        for (std::size_t i = 0; i < b.t_lower.size(); ++i) {
            if (omega > 0.0)
                lower.add(b.t_lower[i] * reg_lower_gamma(b.k_lower[i], x));
            upper.add(b.t_upper[i] * reg_upper_gamma(b.k_upper[i], x));
        }
        double orbital = (Z / u.a_mu) * upper.sum;
        if (omega > 0.0) orbital += lower.sum / omega;
        total.add(orbital);
    }
    return u.k * Z * total.sum;
}

double potential_closed_form(int Z, const ShellConfig& shells, double omega,
                             const UnitSystem& u) {
    return potential_closed_form(Z, build_coefficients(shells), omega, u);
}

PotentialProfile profile_closed_form(int Z, const ShellConfig& shells,
                                     const std::vector<double>& omega_grid,
                                     const UnitSystem& u) {
    const CoefficientTable table = build_coefficients(shells);
    PotentialProfile p;
    p.Z = Z;
    p.shells = shells;
    p.omega_grid = omega_grid;
    p.values.reserve(omega_grid.size());
    for (double om : omega_grid)
        p.values.push_back(potential_closed_form(Z, table, om, u));
    p.source = "closed-form";
    return p;
}

double PotentialProfile::interpolate(double omega) const {
    if (omega_grid.empty())
        throw std::invalid_argument("PotentialProfile: empty grid");
    if (omega <= omega_grid.front()) return values.front();
    if (omega >= omega_grid.back()) {
        // asymptotic tail: V ~ k Z^2 / (2 Omega), continuous at the edge
        return values.back() * omega_grid.back() / omega;
    }
    auto it = std::upper_bound(omega_grid.begin(), omega_grid.end(), omega);
    std::size_t hi = it - omega_grid.begin();
    std::size_t lo = hi - 1;
    const double w = (omega - omega_grid[lo]) / (omega_grid[hi] - omega_grid[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

BetaResult beta(int z_closed, const UnitSystem& u) {
    const ShellConfig shells = shells_for(z_closed);  // throws for bad Z
    const CoefficientTable table = build_coefficients(shells);

    BetaResult r;
    r.Z = z_closed;
    r.beta_over_k_exact = 0;
    for (const Orbital& o : shells.occupied) {
        BigRational contrib = table.lower_weight_sum(o.n, o.l);
        r.contributions.push_back({o.n, o.l, contrib});
        r.beta_over_k_exact += contrib;
    }
    r.beta = u.k * to_double(r.beta_over_k_exact);
    return r;
}

std::vector<ZScalingRow> z_scaling_report(const std::vector<int>& z_list,
                                          double omega_ref, const UnitSystem& u) {
    if (!(omega_ref > 0.0))
        throw std::domain_error("z_scaling_report: Omega_ref must be positive");
    std::vector<ZScalingRow> rows;
    for (int Z : z_list) {
        const ShellConfig shells = shells_for(Z);
        ZScalingRow row;
        row.Z = Z;
        row.v_at_ref = potential_closed_form(Z, shells, omega_ref, u);
        row.linear_approx = beta(Z, u).beta * Z / omega_ref;
        row.rel_deviation = std::abs(row.v_at_ref - row.linear_approx) / row.v_at_ref;
        row.asymptotic = Z >= 10;
        rows.push_back(row);
    }
    return rows;
}

double z_scaling_loglog_slope(const std::vector<ZScalingRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : rows) {
        if (!r.asymptotic) continue;
        const double x = std::log(double(r.Z)), y = std::log(r.v_at_ref);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::domain_error("z_scaling_loglog_slope: need >= 2 asymptotic rows");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PointerBasisReport pointer_basis_diagnostic(const PotentialProfile& profile,
                                            double packet_width) {
    if (!(packet_width > 0.0))
        throw std::domain_error("pointer_basis_diagnostic: packet_width must be positive");
    if (profile.omega_grid.size() < 4)
        throw std::invalid_argument("pointer_basis_diagnostic: profile too sparse");

    PointerBasisReport rep;
    rep.packet_width = packet_width;

    const double sigma = packet_width;
    for (double c : profile.omega_grid) {
        if (c - sigma <= profile.omega_grid.front() ||
            c + sigma >= profile.omega_grid.back())
            continue;
        const double vc = profile.interpolate(c);
        const double spread = std::abs(profile.interpolate(c + sigma) -
                                       profile.interpolate(c - sigma));
        rep.centers.push_back(c);
        rep.epsilon.push_back(spread / vc);
    }

    // packet pair at the inner/outer thirds of the grid span
    const double lo = profile.omega_grid.front(), hi = profile.omega_grid.back();
    rep.packet_center_1 = lo + (hi - lo) / 3.0;
    rep.packet_center_2 = lo + 2.0 * (hi - lo) / 3.0;
    auto packet = [&](double center, double om) {
        const double d = (om - center) / sigma;
        return std::exp(-0.25 * d * d) / std::pow(2.0 * M_PI * sigma * sigma, 0.25);
    };
    // trapezoid over the profile grid: fine, the packets are smooth
    double d1 = 0, d2 = 0, off = 0, norm1 = 0, norm2 = 0;
    for (std::size_t i = 0; i + 1 < profile.omega_grid.size(); ++i) {
        const double om = 0.5 * (profile.omega_grid[i] + profile.omega_grid[i + 1]);
        const double dw = profile.omega_grid[i + 1] - profile.omega_grid[i];
        const double v = profile.interpolate(om);
        const double p1 = packet(rep.packet_center_1, om);
        const double p2 = packet(rep.packet_center_2, om);
        d1 += p1 * p1 * v * dw;
        d2 += p2 * p2 * v * dw;
        off += p1 * p2 * v * dw;
        norm1 += p1 * p1 * dw;
        norm2 += p2 * p2 * dw;
    }
    rep.diag_1 = d1 / norm1;
    rep.diag_2 = d2 / norm2;
    rep.offdiag = std::abs(off) / std::sqrt(norm1 * norm2);
    rep.offdiag_over_diag = rep.offdiag / std::sqrt(rep.diag_1 * rep.diag_2);
    return rep;
}

} // namespace atomsg
