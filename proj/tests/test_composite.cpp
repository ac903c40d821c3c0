#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "atomsg/composite.hpp"

using namespace atomsg;

namespace {

ParticleSet random_particles(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    std::uniform_real_distribution<double> mass(0.1, 50.0);
    ParticleSet ps;
    for (int i = 0; i < n; ++i) {
        ps.positions.push_back({pos(rng), pos(rng), pos(rng)});
        ps.masses.push_back(mass(rng));
    }
    return ps;
}

double max_component_diff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(a[i][c] - b[i][c]));
    return m;
}

} // namespace

TEST_CASE("two unit masses at +-1 decompose symmetrically") {
    ParticleSet ps;
    ps.positions = {{-1, 0, 0}, {1, 0, 0}};
    ps.masses = {1.0, 1.0};
    auto d = decompose(ps);
    CHECK(d.r_cm[0] == doctest::Approx(0.0));
    CHECK(d.rel_coords[0][0] == doctest::Approx(2.0));
    CHECK(d.weights[0] == doctest::Approx(0.5));
    CHECK(d.reduced_masses[0] == doctest::Approx(0.5));

    auto back = recompose(d);
    CHECK(back[0][0] == doctest::Approx(-1.0));
    CHECK(back[1][0] == doctest::Approx(1.0));
}

TEST_CASE("single particle has no relative system") {
    ParticleSet ps;
    ps.positions = {{0, 0, 0}};
    ps.masses = {1.0};
    CHECK_THROWS_AS(decompose(ps), std::domain_error);
}

TEST_CASE("zero relative coordinates put every particle at the CM") {
    ParticleSet ps;
    ps.positions = {{3, 4, 5}, {3, 4, 5}, {3, 4, 5}};
    ps.masses = {1.0, 2.0, 3.0};
    auto d = decompose(ps);
    for (const auto& rel : d.rel_coords)
        for (int c = 0; c < 3; ++c) CHECK(rel[c] == doctest::Approx(0.0));
    auto back = recompose(d);
    for (const auto& p : back)
        for (int c = 0; c < 3; ++c) CHECK(p[c] == doctest::Approx(ps.positions[0][c]));
}

TEST_CASE("round trip holds to 1e-12 on random particle sets up to N=20") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> size(2, 20);
        auto ps = random_particles(rng, size(rng));
        auto back = recompose(decompose(ps));
        CHECK(max_component_diff(ps.positions, back) < 1e-12);
    }
}

TEST_CASE("CM is translation-equivariant, relative coordinates invariant") {
    std::mt19937_64 rng(7);
    auto ps = random_particles(rng, 8);
    auto d0 = decompose(ps);
    const Vec3 shift{2.5, -1.0, 0.75};
    ParticleSet moved = ps;
    for (auto& p : moved.positions)
        for (int c = 0; c < 3; ++c) p[c] += shift[c];
    auto d1 = decompose(moved);
    for (int c = 0; c < 3; ++c)
        CHECK(d1.r_cm[c] - d0.r_cm[c] == doctest::Approx(shift[c]).epsilon(1e-12));
    CHECK(max_component_diff(d0.rel_coords, d1.rel_coords) < 1e-12);
}

TEST_CASE("reduced masses satisfy 1/mu = 1/m + 1/(M-m)") {
    std::mt19937_64 rng(99);
    auto ps = random_particles(rng, 12);
    auto d = decompose(ps);
    for (std::size_t a = 0; a < d.reduced_masses.size(); ++a) {
        const double m = ps.masses[a + 1];
        const double expected = 1.0 / m + 1.0 / (d.total_mass - m);
        CHECK(1.0 / d.reduced_masses[a] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(d.reduced_masses[a] < std::min(m, d.total_mass - m));
    }
}

TEST_CASE("nucleus_masses follows the equal-nucleon-mass simplification") {
    UnitSystem u;
    SUBCASE("A=4 gives mu = 0.75 m") {
        auto m = nucleus_masses({2, 4}, u);
        CHECK(m.mu_reduced == doctest::Approx(0.75 * u.m_p));
        CHECK_FALSE(m.degenerate);
    }
    SUBCASE("A=1 is degenerate: no relative system") {
        auto m = nucleus_masses({1, 1}, u);
        CHECK(m.mu_reduced == doctest::Approx(0.0));
        CHECK(m.degenerate);
    }
    SUBCASE("Z=47 A=107 nucleus mass is 107 m") {
        auto m = nucleus_masses({47, 107}, u);
        CHECK(m.M_nucleus == doctest::Approx(107.0 * u.m_p));
        CHECK(m.M_atom == doctest::Approx(107.0 * u.m_p + 47.0 * u.m_e));
    }
}

TEST_CASE("kappa parameters and separability flags") {
    UnitSystem u;
    SUBCASE("A=4 arithmetic") {
        auto kp = kappa_params({2, 4}, u);
        CHECK(kp.kappa3 == doctest::Approx((1.0 - 0.25) / 4.0));
        CHECK(kp.kappa1 == doctest::Approx(1.0 / (4.0 * u.m_p)));
        CHECK(kp.kappa2 == doctest::Approx(1.0 / (0.75 * u.m_p)));
        CHECK(kp.kappa == kp.kappa2);
        CHECK(kp.adiabatic_error_bound == doctest::Approx(std::pow(kp.kappa2, 0.75)));
    }
    SUBCASE("realistic atoms sit inside the order-of-magnitude bands") {
        for (auto [z, a] : {std::pair{10, 20}, {28, 62}, {60, 144}, {79, 197}}) {
            auto kp = kappa_params({z, a}, u);
            CHECK(kp.kappa1 < 3e-4);
            CHECK(kp.kappa2 < 1e-3);
            CHECK(kp.kappa3 > 3e-3);
            CHECK(kp.electrons_separable);
            CHECK_FALSE(kp.cm_r_separable);
        }
    }
    SUBCASE("large systems become CM-R separable") {
        auto kp = kappa_params({1, 1'000'000}, u);
        CHECK(kp.kappa3 == doctest::Approx(1e-6).epsilon(1e-3));
        CHECK(kp.cm_r_separable);
    }
    SUBCASE("A < 2 is rejected") {
        CHECK_THROWS_AS(kappa_params({1, 1}, u), std::domain_error);
    }
    SUBCASE("kappa3 decreases monotonically with A") {
        double prev = 1.0;
        for (int a = 2; a <= 4096; a *= 2) {
            auto kp = kappa_params({1, a}, u);
            CHECK(kp.kappa3 < prev);
            prev = kp.kappa3;
        }
    }
    SUBCASE("kappa1 < kappa2 whenever the nucleus has >= 2 nucleons") {
        for (int a = 2; a <= 300; a += 37) {
            auto kp = kappa_params({1, a}, u);
            CHECK(kp.kappa1 < kp.kappa2);
        }
    }
}

TEST_CASE("yukawa potential") {
    YukawaParams p{1.0, 2.0};
    SUBCASE("value at the range r = 1/mu") {
        CHECK(yukawa(0.5, p) == doctest::Approx(-2.0 * std::exp(-1.0)));
    }
    SUBCASE("vanishes from below at large r") {
        const double v = yukawa(50.0, p);
        CHECK(v < 0.0);
        CHECK(v > -1e-40);
    }
    SUBCASE("ratio to bare Coulomb is exp(-mu r)") {
        const double r = 0.5 / p.mu_range_inv;
        CHECK(yukawa(r, p) / (-p.gamma_sq / r) == doctest::Approx(std::exp(-0.5)));
    }
    SUBCASE("singularity guarded") {
        CHECK_THROWS_AS(yukawa(0.0, p), std::domain_error);
        CHECK_THROWS_AS(yukawa(-1.0, p), std::domain_error);
    }
}
