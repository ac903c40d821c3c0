#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#ifdef ATOMSG_HAVE_EIGEN
#include <Eigen/Dense>
#endif

#include "atomsg/errors.hpp"
#include "atomsg/simulator.hpp"

using namespace atomsg;
using cplx = std::complex<double>;

namespace {

SimConfig free_config() {
    SimConfig cfg;
    cfg.cm_grid = {-16.0, 16.0, 128};
    cfg.r_grid = {-5.0, 5.0, 32};
    cfg.mass_cm = 50.0;
    cfg.mass_r = 10.0;
    cfg.field_gradient = 0.0;
    cfg.omega_r = 1.0;
    cfg.packet_center = 0.0;
    cfg.packet_width = 1.5;
    cfg.packet_momentum = 0.0;
    cfg.dt = 0.01;
    cfg.total_time = 4.0;
    cfg.snapshot_stride = 50;
    return cfg;
}

// Branch momenta reach b' * T; the grid keeps k * dx well under 1 so the
// finite-difference dispersion does not contaminate the t^2 law.
SimConfig sg_config() {
    SimConfig cfg = free_config();
    cfg.cm_grid = {-12.0, 12.0, 256};
    cfg.field_gradient = 0.25;
    cfg.dt = 0.01;
    cfg.total_time = 4.0;
    return cfg;
}

// Packet straddles the interaction ridge at Omega = 0, so the two spin
// branches feel sign-opposite R forces once the field separates them.
// R is a free particle in a box (omega_r = 0): a small box recurs, a
// large one disperses.
SimConfig straddle_config(int nrho) {
    SimConfig cfg;
    cfg.cm_grid = {-5.0, 5.0, 96};
    const double half = 0.5 * 0.25 * (nrho - 1);
    cfg.r_grid = {-half, half, nrho};
    cfg.mass_cm = 20.0;
    cfg.mass_r = 2.0;
    cfg.field_gradient = 0.6;
    cfg.omega_r = 0.0;
    cfg.packet_center = 0.0;
    cfg.packet_width = 0.6;
    cfg.dt = 0.005;
    cfg.total_time = 10.0;
    cfg.snapshot_stride = 100;
    cfg.coupling.enabled = true;
    cfg.coupling.lambda = 1.0;
    cfg.coupling.offset = 0.0;
    cfg.coupling.source = CouplingSource::closed_form;
    cfg.coupling.Z = 2;
    return cfg;
}

// Smooth variant: ridge outside the grid, gentle drive. Used where the
// split-step energy conservation is under test.
SimConfig smooth_coupled_config() {
    SimConfig cfg;
    cfg.cm_grid = {-8.0, 8.0, 128};
    cfg.r_grid = {-4.0, 4.0, 48};
    cfg.mass_cm = 200.0;
    cfg.mass_r = 5.0;
    cfg.field_gradient = 4.0;
    cfg.omega_r = 1.0;
    cfg.packet_center = -1.0;
    cfg.packet_width = 0.8;
    cfg.dt = 0.004;
    cfg.total_time = 3.0;
    cfg.snapshot_stride = 50;
    cfg.coupling.enabled = true;
    cfg.coupling.lambda = 1.0;
    cfg.coupling.offset = 3.5;
    cfg.coupling.source = CouplingSource::closed_form;
    cfg.coupling.Z = 10;
    return cfg;
}

// R-marginal density matrix (measure folded in), for fidelity checks
std::vector<cplx> r_marginal(const CompositeState& st) {
    std::vector<cplx> g(static_cast<std::size_t>(st.nrho) * st.nrho, cplx(0.0));
    for (int ix = 0; ix < st.nx; ++ix)
        for (int s = 0; s < 2; ++s)
            for (int r1 = 0; r1 < st.nrho; ++r1)
                for (int r2 = 0; r2 < st.nrho; ++r2)
                    g[static_cast<std::size_t>(r1) * st.nrho + r2] +=
                        st.at(ix, r1, s) * std::conj(st.at(ix, r2, s));
    for (auto& v : g) v *= st.dx * st.drho;
    return g;
}

// normalized R slice of a product state (column with the most weight)
std::vector<double> r_factor(const CompositeState& st) {
    int best_ix = 0;
    double best = -1.0;
    for (int ix = 0; ix < st.nx; ++ix) {
        const double w = std::norm(st.at(ix, st.nrho / 2, 0));
        if (w > best) {
            best = w;
            best_ix = ix;
        }
    }
    std::vector<double> v(st.nrho);
    double norm = 0.0;
    for (int r = 0; r < st.nrho; ++r) {
        v[r] = std::abs(st.at(best_ix, r, 0));
        norm += v[r] * v[r];
    }
    norm = std::sqrt(norm * st.drho);
    for (double& x : v) x /= norm;
    return v;
}

} // namespace

TEST_CASE("free evolution keeps the R factor stationary") {
    auto cfg = free_config();
    cfg.keep_states = true;
    auto traj = evolve(cfg);

    const auto r0 = r_factor(traj.states.front());
    const auto rho_r = r_marginal(traj.final_state);
    // fidelity^2 = <r0| rho_R |r0>; rho_R rows already carry the measure
    double fid2 = 0.0;
    for (int r1 = 0; r1 < cfg.r_grid.points; ++r1)
        for (int r2 = 0; r2 < cfg.r_grid.points; ++r2)
            fid2 += r0[r1] *
                    std::real(rho_r[static_cast<std::size_t>(r1) * cfg.r_grid.points + r2]) *
                    r0[r2];
    fid2 *= cfg.r_grid.step();
    CHECK(std::sqrt(std::max(0.0, fid2)) == doctest::Approx(1.0).epsilon(1e-8));

    for (const auto& m : traj.metrics) {
        CHECK(std::abs(m.branch_overlap - 1.0) < 1e-10);
        CHECK(std::abs(m.norm - 1.0) < 1e-10);
        CHECK(std::abs(m.purity - 1.0) < 1e-8);
    }
}

TEST_CASE("SG field separates branches with the Ehrenfest t^2 law") {
    auto cfg = sg_config();
    cfg.keep_states = true;
    auto traj = evolve(cfg);

    // <x>_+- = -+ (mu_B b' / 2M) t^2; S_z eigenvalues are +-1
    const double coeff = cfg.units.mu_B * cfg.field_gradient / (2.0 * cfg.mass_cm);
    for (const auto& m : traj.metrics) {
        const double expected = 2.0 * coeff * m.time * m.time;  // separation
        if (expected > 1e-3)
            CHECK(m.centroid_separation == doctest::Approx(expected).epsilon(1e-2));
        CHECK(std::abs(m.purity - 1.0) < 1e-8);  // pure CM+S: R untouched
        CHECK(std::abs(m.branch_overlap - 1.0) < 1e-10);
    }

    // per-branch centroids, from the stored final state
    const auto& st = traj.final_state;
    double xp = 0, xm = 0, pp = 0, pm = 0;
    for (int ix = 0; ix < st.nx; ++ix)
        for (int ir = 0; ir < st.nrho; ++ir) {
            const double x = cfg.cm_grid.at(ix);
            xp += x * std::norm(st.at(ix, ir, 0));
            pp += std::norm(st.at(ix, ir, 0));
            xm += x * std::norm(st.at(ix, ir, 1));
            pm += std::norm(st.at(ix, ir, 1));
        }
    const double t = st.time;
    CHECK(xp / pp == doctest::Approx(-coeff * t * t).epsilon(1e-2));
    CHECK(xm / pm == doctest::Approx(+coeff * t * t).epsilon(1e-2));
}

TEST_CASE("coupling entangles CM+S with R: overlap and purity drop") {
    auto traj = evolve(straddle_config(32));
    const auto& first = traj.metrics.front();
    const auto& last = traj.metrics.back();
    CHECK(first.branch_overlap == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(last.branch_overlap < 1.0 - 1e-3);
    CHECK(last.purity < 1.0 - 1e-4);
    for (const auto& m : traj.metrics) CHECK(std::abs(m.norm - 1.0) < 1e-10);
}

TEST_CASE("decoherence metrics: overlap nonincreasing during first separation") {
    auto traj = evolve(straddle_config(32));
    auto series = decoherence_metrics(traj);
    REQUIRE(series.size() >= 3);
    // no-recurrence window: first 60% of the run
    double prev = series.front().branch_overlap + 1e-12;
    for (std::size_t i = 0; i < series.size() * 6 / 10; ++i) {
        CHECK(series[i].branch_overlap <= prev + 1e-6);
        prev = series[i].branch_overlap;
    }
}

TEST_CASE("reduce: product state has purity 1, trace 1") {
    auto cfg = free_config();
    auto st = initial_state(cfg);
    auto rdm = reduce(st);
    CHECK(rdm.trace_value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rdm.purity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rdm.branch_overlap == doctest::Approx(1.0));
}

TEST_CASE("reduce: orthogonal two-branch state gives purity 1/2") {
    // two fully correlated branches with <r_1|r_2> = 0 and equal weights
    SimConfig cfg = free_config();
    cfg.cm_grid.points = 32;
    cfg.r_grid.points = 32;
    auto st = initial_state(cfg);
    const int nx = st.nx, nr = st.nrho;
    auto gauss = [&](double x, double c) { return std::exp(-(x - c) * (x - c)); };
    for (int ix = 0; ix < nx; ++ix)
        for (int ir = 0; ir < nr; ++ir) {
            const double x = cfg.cm_grid.at(ix);
            const double r1 = ir < nr / 2 ? gauss(cfg.r_grid.at(ir), -2.0) : 0.0;
            const double r2 = ir >= nr / 2 ? gauss(cfg.r_grid.at(ir), 2.0) : 0.0;
            st.at(ix, ir, 0) = gauss(x, -3.0) * r1;
            st.at(ix, ir, 1) = gauss(x, 3.0) * r2;
        }
    double p0 = 0, p1 = 0;
    for (int ix = 0; ix < nx; ++ix)
        for (int ir = 0; ir < nr; ++ir) {
            p0 += std::norm(st.at(ix, ir, 0));
            p1 += std::norm(st.at(ix, ir, 1));
        }
    const double meas = st.dx * st.drho;
    for (int ix = 0; ix < nx; ++ix)
        for (int ir = 0; ir < nr; ++ir) {
            st.at(ix, ir, 0) /= std::sqrt(2.0 * p0 * meas);
            st.at(ix, ir, 1) /= std::sqrt(2.0 * p1 * meas);
        }

    auto rdm = reduce(st);
    CHECK(rdm.trace_value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rdm.purity == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rdm.branch_overlap == doctest::Approx(0.0).epsilon(1e-8));
    // spin off-diagonal block vanishes identically
    double max_offdiag = 0.0;
    for (int x1 = 0; x1 < nx; ++x1)
        for (int x2 = 0; x2 < nx; ++x2)
            max_offdiag = std::max(max_offdiag, std::abs(rdm.at(x1, nx + x2)));
    CHECK(max_offdiag < 1e-14);
}

TEST_CASE("reduce agrees with the independent R-marginal purity mid-run") {
    auto cfg = straddle_config(16);
    cfg.cm_grid = {-5.0, 5.0, 16};
    cfg.total_time = 2.0;
    cfg.snapshot_stride = 100;
    cfg.keep_states = true;
    auto traj = evolve(cfg);
    REQUIRE(traj.states.size() >= 2);
    const auto& mid = traj.states[traj.states.size() / 2];
    auto rdm = reduce(mid);

    // independent dense path: purity of the R marginal
    const auto rho_r = r_marginal(mid);
    double purity_r = 0.0;
    for (const auto& v : rho_r) purity_r += std::norm(v);
    CHECK(rdm.purity == doctest::Approx(purity_r).epsilon(1e-10));
    CHECK(rdm.trace_value == doctest::Approx(1.0).epsilon(1e-10));

#ifdef ATOMSG_HAVE_EIGEN
    // Hermitian PSD with unit trace
    const int dim = 2 * mid.nx;
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = rdm.at(i, j);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
#endif
}

TEST_CASE("reduce rejects unnormalized input") {
    auto st = initial_state(free_config());
    for (auto& a : st.amp) a *= 1.5;
    CHECK_THROWS_AS(reduce(st), std::invalid_argument);
}

TEST_CASE("norm drift stays within 1e-10 over 1e4 steps") {
    auto cfg = free_config();
    cfg.cm_grid = {-12.0, 12.0, 48};
    cfg.r_grid = {-4.0, 4.0, 24};
    cfg.field_gradient = 0.5;
    cfg.dt = 0.002;
    cfg.total_time = 20.0;  // 1e4 steps
    cfg.snapshot_stride = 2000;
    auto traj = evolve(cfg);
    for (const auto& m : traj.metrics) CHECK(std::abs(m.norm - 1.0) <= 1e-10);
}

TEST_CASE("energy expectation drift <= 1e-6 relative") {
    auto traj = evolve(smooth_coupled_config());
    const double e0 = traj.metrics.front().energy;
    for (const auto& m : traj.metrics)
        CHECK(std::abs(m.energy - e0) <= 1e-6 * std::abs(e0));
}

TEST_CASE("halving dt improves the final state at order >= 1.8") {
    auto cfg = smooth_coupled_config();
    cfg.cm_grid = {-8.0, 8.0, 64};
    cfg.r_grid = {-4.0, 4.0, 32};
    cfg.total_time = 1.0;
    cfg.snapshot_stride = 1000000;  // final snapshot only

    auto run = [&](double dt) {
        SimConfig c = cfg;
        c.dt = dt;
        return evolve(c).final_state;
    };
    const auto a = run(0.02), b = run(0.01), c = run(0.005);
    auto diff = [](const CompositeState& u, const CompositeState& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.amp.size(); ++i) s += std::norm(u.amp[i] - v.amp[i]);
        return std::sqrt(s * u.dx * u.drho);
    };
    const double e1 = diff(a, b), e2 = diff(b, c);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.8);
}

TEST_CASE("recurrence probe") {
    SUBCASE("coupling off: overlap constant, no revivals") {
        auto traj = evolve(free_config());
        auto rep = recurrence_probe(traj, 0.99);
        CHECK_FALSE(rep.dropped_below);
        CHECK_FALSE(rep.revival_detected);
        CHECK(rep.min_overlap == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("small R box recurs; revival amplitude falls with N_rho") {
        const double threshold = 0.95;
        auto probe = [&](int nrho) {
            auto cfg = straddle_config(nrho);
            cfg.total_time = 16.0;
            return recurrence_probe(evolve(cfg), threshold);
        };
        auto small = probe(16);
        auto mid = probe(32);
        auto large = probe(64);

        CHECK(small.dropped_below);
        CHECK(small.revival_detected);  // coherence returns above threshold
        CHECK(mid.dropped_below);
        CHECK(large.dropped_below);
        CHECK_FALSE(large.revival_detected);  // dispersed into the large box
        CHECK(small.revival_amplitude > mid.revival_amplitude);
        CHECK(mid.revival_amplitude > large.revival_amplitude);
    }
}

TEST_CASE("decoherence_metrics needs at least two snapshots") {
    Trajectory t;
    t.metrics.push_back({});
    CHECK_THROWS_AS(decoherence_metrics(t), std::invalid_argument);
}

TEST_CASE("NaN in the coupling profile trips the blowup guard") {
    const char* path = "nan_profile_tmp.csv";
    {
        std::ofstream f(path);
        f << "omega,value\n0,nan\n1,nan\n10,nan\n";
    }
    auto cfg = straddle_config(32);
    cfg.coupling.source = CouplingSource::profile;
    cfg.coupling.profile_path = path;
    cfg.total_time = 0.1;
    bool threw = false;
    try {
        evolve(cfg);
    } catch (const NumericalBlowupError& e) {
        threw = true;
        CHECK(e.last_good_snapshot == 0);
    }
    CHECK(threw);
    std::remove(path);
}

TEST_CASE("analytic coupling source is softened at the ridge") {
    // offset inside the grid puts Omega = 0 on the ridge; the softened
    // beta Z/(Omega + a/(2 n_max)) form must stay finite and evolve cleanly
    auto cfg = straddle_config(32);
    cfg.coupling.source = CouplingSource::analytic;
    cfg.coupling.Z = 2;
    cfg.total_time = 2.0;
    auto traj = evolve(cfg);
    for (const auto& m : traj.metrics) {
        CHECK(std::isfinite(m.energy));
        CHECK(std::abs(m.norm - 1.0) < 1e-10);
    }
}
