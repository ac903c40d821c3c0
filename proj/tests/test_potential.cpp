#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "atomsg/potential.hpp"

using namespace atomsg;

namespace {
const UnitSystem u{};
} // namespace

TEST_CASE("V(0) takes the analytic-limit branch: k Z^2 n_max / a") {
    for (int n_max : {1, 2, 3, 4}) {
        const int z = closed_shell_z(n_max);
        const double v0 = potential_closed_form(z, shells_for(z), 0.0, u);
        CHECK(v0 == doctest::Approx(double(z) * z * n_max).epsilon(1e-12));
    }
}

TEST_CASE("Omega * V approaches k Z^2 / 2 at large Omega") {
    for (int z : {10, 28, 182}) {
        const double om = 50.0;
        const double v = potential_closed_form(z, shells_for(z), om, u);
        CHECK(om * v == doctest::Approx(0.5 * z * z).epsilon(1e-10));
    }
}

TEST_CASE("frozen reference values, Z=10 and Z=28") {
    // 40-digit quadrature of the radial form, rounded to double
    auto s10 = shells_for(10);
    CHECK(potential_closed_form(10, s10, 0.1, u) ==
          doctest::Approx(169.43240438623755).epsilon(1e-13));
    CHECK(potential_closed_form(10, s10, 0.5, u) ==
          doctest::Approx(89.853941774804874).epsilon(1e-13));
    CHECK(potential_closed_form(10, s10, 1.0, u) ==
          doctest::Approx(49.82566404298516).epsilon(1e-13));
    CHECK(potential_closed_form(10, s10, 2.0, u) ==
          doctest::Approx(24.999974606587371).epsilon(1e-13));
    auto s28 = shells_for(28);
    CHECK(potential_closed_form(28, s28, 0.3, u) ==
          doctest::Approx(1093.3982175249925).epsilon(1e-12));
    CHECK(potential_closed_form(28, s28, 2.5, u) ==
          doctest::Approx(156.79999999999941).epsilon(1e-12));
}

TEST_CASE("V is continuous at 0 and monotone nonincreasing on the grid") {
    for (int z : {10, 182}) {
        auto shells = shells_for(z);
        auto table = build_coefficients(shells);
        double prev = potential_closed_form(z, table, 0.0, u);
        // continuity: approach from the right
        CHECK(potential_closed_form(z, table, 1e-9, u) ==
              doctest::Approx(prev).epsilon(1e-6));
        for (int i = 1; i < 200; ++i) {
            const double om = 50.0 * i / 199.0;
            const double v = potential_closed_form(z, table, om, u);
            CHECK(v <= prev * (1.0 + 1e-12));
            CHECK(v > 0.0);
            prev = v;
        }
    }
}

TEST_CASE("negative Omega is rejected") {
    CHECK_THROWS_AS(potential_closed_form(10, shells_for(10), -1.0, u),
                    std::domain_error);
}

TEST_CASE("beta: exact Z/2 identity and error handling") {
    auto b10 = beta(10, u);
    CHECK(b10.beta_over_k_exact == BigRational(5));
    CHECK(b10.beta == doctest::Approx(5.0));
    CHECK(b10.contributions.size() == 3);

    for (int n_max = 1; n_max <= 6; ++n_max) {
        const int z = closed_shell_z(n_max);
        auto b = beta(z, u);
        CHECK(b.beta_over_k_exact == BigRational(z, 2));
        CHECK(b.beta > 0.0);
    }
    CHECK_THROWS_AS(beta(11, u), std::domain_error);
}

TEST_CASE("beta is linear in Z with R^2 >= 0.999") {
    std::vector<double> zs, betas;
    for (int n_max = 2; n_max <= 6; ++n_max) {
        const int z = closed_shell_z(n_max);
        zs.push_back(z);
        betas.push_back(beta(z, u).beta);
    }
    const int n = static_cast<int>(zs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += zs[i];
        sy += betas[i];
        sxx += zs[i] * zs[i];
        sxy += zs[i] * betas[i];
        syy += betas[i] * betas[i];
    }
    const double r_num = n * sxy - sx * sy;
    const double r2 = r_num * r_num / ((n * sxx - sx * sx) * (n * syy - sy * sy));
    CHECK(r2 >= 0.999);
    const double slope = r_num / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("z-scaling report: deviations and the log-log slope") {
    auto rows = z_scaling_report({2, 10, 28, 60, 110, 182}, 5.0, u);
    REQUIRE(rows.size() == 6);
    CHECK_FALSE(rows[0].asymptotic);  // Z=2 flagged outside the regime
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].asymptotic);

    // Z=60 at Omega_ref = 5a: exponential terms are utterly negligible
    CHECK(rows[3].Z == 60);
    CHECK(rows[3].rel_deviation <= 1e-3);

    auto fit_rows = z_scaling_report({28, 60, 110, 182}, 5.0, u);
    const double slope = z_scaling_loglog_slope(fit_rows);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("pointer-basis diagnostic") {
    const int z = 10;
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(10.0 * i / 400.0);
    auto profile = profile_closed_form(z, shells_for(z), grid, u);

    SUBCASE("epsilon shrinks with the packet width") {
        auto wide = pointer_basis_diagnostic(profile, 0.4);
        auto narrow = pointer_basis_diagnostic(profile, 0.05);
        REQUIRE(!wide.epsilon.empty());
        REQUIRE(!narrow.epsilon.empty());
        // compare at a common center: Omega = 5
        auto eps_at = [](const PointerBasisReport& r, double c) {
            for (std::size_t i = 0; i < r.centers.size(); ++i)
                if (std::abs(r.centers[i] - c) < 1e-9) return r.epsilon[i];
            return -1.0;
        };
        const double ew = eps_at(wide, 5.0), en = eps_at(narrow, 5.0);
        REQUIRE(ew > 0.0);
        REQUIRE(en > 0.0);
        CHECK(en < ew);
        CHECK(en < 0.15 * ew);  // roughly linear in sigma for smooth V
    }

    SUBCASE("epsilon cross-checks against a finite difference of V") {
        const double sigma = 0.1, om = 5.0;
        auto rep = pointer_basis_diagnostic(profile, sigma);
        double eps_reported = -1.0;
        for (std::size_t i = 0; i < rep.centers.size(); ++i)
            if (std::abs(rep.centers[i] - om) < 1e-9) eps_reported = rep.epsilon[i];
        REQUIRE(eps_reported > 0.0);
        auto shells = shells_for(z);
        const double fd = std::abs(potential_closed_form(z, shells, om + sigma, u) -
                                   potential_closed_form(z, shells, om - sigma, u)) /
                          potential_closed_form(z, shells, om, u);
        CHECK(eps_reported == doctest::Approx(fd).epsilon(1e-3));
    }

    SUBCASE("structural diagonality and separated-packet suppression") {
        auto rep = pointer_basis_diagnostic(profile, 0.2);
        CHECK(rep.position_basis_exactly_diagonal);
        // packets 1/3 span apart at sigma = 0.2: overlap is essentially zero
        CHECK(rep.offdiag_over_diag < 1e-6);
    }
}

TEST_CASE("profile interpolation: interior, edge, and tail") {
    std::vector<double> grid{1.0, 2.0, 3.0, 4.0};
    PotentialProfile p;
    p.omega_grid = grid;
    p.values = {8.0, 4.0, 8.0 / 3.0, 2.0};  // 8/Omega
    CHECK(p.interpolate(2.5) == doctest::Approx(0.5 * (4.0 + 8.0 / 3.0)));
    CHECK(p.interpolate(0.5) == doctest::Approx(8.0));       // clamped left
    CHECK(p.interpolate(8.0) == doctest::Approx(1.0));       // 1/Omega tail
}
