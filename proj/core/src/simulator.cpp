#include "atomsg/simulator.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "atomsg/errors.hpp"

namespace atomsg {

namespace {

using cplx = std::complex<double>;

// Cayley propagator for one kinetic axis: psi <- (1 + i a T)^-1 (1 - i a T) psi
// with T the Dirichlet three-point Laplacian kinetic operator and
// a = dt/(2 hbar). Exactly norm-preserving for Hermitian T.
struct CayleySweep {
    int n = 0;
    cplx diag_b;   // rhs diagonal 1 - 2 i a c
    cplx off_b;    // rhs off-diagonal + i a c
    cplx diag_a;   // lhs diagonal 1 + 2 i a c
    cplx off_a;    // lhs off-diagonal - i a c
    std::vector<cplx> cp;     // precomputed forward-elimination ratios
    std::vector<cplx> denom;  // pivot denominators
    std::vector<cplx> rhs, sol;

    void init(int n_, double mass, double h, double dt, double hbar) {
        n = n_;
        const double c = hbar * hbar / (2.0 * mass * h * h);
        const double a = dt / (2.0 * hbar);
        diag_b = cplx(1.0, -2.0 * a * c);
        off_b = cplx(0.0, a * c);
        diag_a = cplx(1.0, 2.0 * a * c);
        off_a = cplx(0.0, -a * c);
        cp.resize(n);
        denom.resize(n);
        cp[0] = off_a / diag_a;
        denom[0] = diag_a;
        for (int j = 1; j < n; ++j) {
            denom[j] = diag_a - off_a * cp[j - 1];
            cp[j] = off_a / denom[j];
        }
        rhs.resize(n);
        sol.resize(n);
    }

    // line has n entries at the given stride
    void apply(cplx* line, std::size_t stride) {
        for (int j = 0; j < n; ++j) {
            cplx v = diag_b * line[j * stride];
            if (j > 0) v += off_b * line[(j - 1) * stride];
            if (j + 1 < n) v += off_b * line[(j + 1) * stride];
            rhs[j] = v;
        }
        sol[0] = rhs[0] / denom[0];
        for (int j = 1; j < n; ++j)
            sol[j] = (rhs[j] - off_a * sol[j - 1]) / denom[j];
        for (int j = n - 2; j >= 0; --j) sol[j] -= cp[j] * sol[j + 1];
        for (int j = 0; j < n; ++j) line[j * stride] = sol[j];
    }
};

// Real symmetric tridiagonal solve, used by the inverse iteration that
// prepares the discrete R ground state.
void thomas_real(const std::vector<double>& diag, double off,
                 std::vector<double>& x, const std::vector<double>& b) {
    const int n = static_cast<int>(diag.size());
    static thread_local std::vector<double> cp, d;
    cp.assign(n, 0.0);
    d.assign(n, 0.0);
    cp[0] = off / diag[0];
    d[0] = b[0] / diag[0];
    for (int j = 1; j < n; ++j) {
        const double m = diag[j] - off * cp[j - 1];
        cp[j] = off / m;
        d[j] = (b[j] - off * d[j - 1]) / m;
    }
    x.assign(n, 0.0);
    x[n - 1] = d[n - 1];
    for (int j = n - 2; j >= 0; --j) x[j] = d[j] - cp[j] * x[j + 1];
}

// Ground state of T_rho + V_R on the grid, by plain inverse iteration.
// Using the discrete operator's own eigenvector keeps the uncoupled R
// marginal stationary to machine precision.
std::vector<double> discrete_r_ground_state(const SimConfig& cfg) {
    const int n = cfg.r_grid.points;
    const double h = cfg.r_grid.step();
    const double c = cfg.units.hbar * cfg.units.hbar / (2.0 * cfg.mass_r * h * h);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        const double rho = cfg.r_grid.at(i);
        diag[i] = 2.0 * c + 0.5 * cfg.mass_r * cfg.omega_r * cfg.omega_r * rho * rho;
    }
    const double off = -c;

    std::vector<double> v(n), next(n);
    const double sigma =
        cfg.omega_r > 0.0
            ? std::sqrt(cfg.units.hbar / (cfg.mass_r * cfg.omega_r))
            : 0.25 * (cfg.r_grid.max - cfg.r_grid.min);
    for (int i = 0; i < n; ++i) {
        const double rho = cfg.r_grid.at(i);
        v[i] = std::exp(-rho * rho / (2.0 * sigma * sigma));
    }
    auto normalize = [&](std::vector<double>& w) {
        double s = 0.0;
        for (double x : w) s += x * x;
        s = std::sqrt(s * h);
        for (double& x : w) x /= s;
    };
    normalize(v);
    for (int it = 0; it < 200; ++it) {
        thomas_real(diag, off, next, v);
        normalize(next);
        double delta = 0.0;
        for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - v[i]));
        v.swap(next);
        if (delta < 1e-15) break;
    }
    return v;
}

// Coupling potential V(Omega) factory per source.
std::function<double(double)> coupling_potential(const SimConfig& cfg) {
    const CouplingSpec& c = cfg.coupling;
    const UnitSystem u = cfg.units;
    switch (c.source) {
        case CouplingSource::closed_form: {
            const ShellConfig shells = shells_for(c.Z);
            auto table = std::make_shared<CoefficientTable>(build_coefficients(shells));
            const int Z = c.Z;
            return [table, Z, u](double om) {
                return potential_closed_form(Z, *table, om, u);
            };
        }
        case CouplingSource::analytic: {
            // softened asymptote beta Z/(Omega + a/(2 n_max)); the shift makes
            // V(0) match the closed form's k Z^2 n_max / a
            const ShellConfig shells = shells_for(c.Z);
            const double b = beta(c.Z, u).beta;
            const double soften = u.a_mu / (2.0 * shells.n_max());
            const int Z = c.Z;
            return [b, Z, soften](double om) { return b * Z / (om + soften); };
        }
        case CouplingSource::profile: {
            auto profile = std::make_shared<PotentialProfile>();
            std::ifstream in(c.profile_path);
            if (!in) throw ConfigError("cannot open coupling profile: " + c.profile_path);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' ||
                                      line[0] == '+' || line[0] == '.'))
                    continue;  // header or comment
                double om, val;
                char comma;
                std::istringstream row(line);
                if (row >> om >> comma >> val) {
                    profile->omega_grid.push_back(om);
                    profile->values.push_back(val);
                }
            }
            if (profile->omega_grid.size() < 2)
                throw ConfigError("coupling profile has fewer than 2 rows: " +
                                  c.profile_path);
            return [profile](double om) { return profile->interpolate(om); };
        }
    }
    throw ConfigError("unknown coupling source");
}

struct Engine {
    SimConfig cfg;
    int nx, nr;
    double dx, dr;
    std::vector<double> half_phase_re, half_phase_im;  // cos/sin of -V dt/(2 hbar)
    std::vector<double> potential;                     // V(x, rho, s)
    CayleySweep sweep_x, sweep_r;

    explicit Engine(const SimConfig& c) : cfg(c) {
        nx = cfg.cm_grid.points;
        nr = cfg.r_grid.points;
        dx = cfg.cm_grid.step();
        dr = cfg.r_grid.step();

        std::function<double(double)> vc;
        if (cfg.coupling.enabled) vc = coupling_potential(cfg);

        potential.resize(static_cast<std::size_t>(nx) * nr * 2);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = cfg.cm_grid.at(ix);
            for (int ir = 0; ir < nr; ++ir) {
                const double rho = cfg.r_grid.at(ir);
                double v_common =
                    0.5 * cfg.mass_r * cfg.omega_r * cfg.omega_r * rho * rho;
                if (cfg.coupling.enabled) {
                    const double om =
                        std::abs(x + cfg.coupling.lambda * rho - cfg.coupling.offset);
                    v_common += vc(om);
                }
                const double zeeman = cfg.units.mu_B * cfg.field_gradient * x;
                for (int s = 0; s < 2; ++s) {
                    const double sz = (s == 0) ? 1.0 : -1.0;
                    potential[(static_cast<std::size_t>(ix) * nr + ir) * 2 + s] =
                        v_common + zeeman * sz;
                }
            }
        }
        const double a = cfg.dt / (2.0 * cfg.units.hbar);
        half_phase_re.resize(potential.size());
        half_phase_im.resize(potential.size());
        for (std::size_t i = 0; i < potential.size(); ++i) {
            half_phase_re[i] = std::cos(-potential[i] * a);
            half_phase_im[i] = std::sin(-potential[i] * a);
        }
        sweep_x.init(nx, cfg.mass_cm, dx, cfg.dt, cfg.units.hbar);
        sweep_r.init(nr, cfg.mass_r, dr, cfg.dt, cfg.units.hbar);
    }

    void half_potential(CompositeState& st) const {
        for (std::size_t i = 0; i < st.amp.size(); ++i) {
            const cplx phase(half_phase_re[i], half_phase_im[i]);
            st.amp[i] *= phase;
        }
    }

    void step(CompositeState& st) {
        half_potential(st);
        // kinetic x: lines at fixed (rho, s), stride nr*2
        const std::size_t stride_x = static_cast<std::size_t>(nr) * 2;
        for (int ir = 0; ir < nr; ++ir)
            for (int s = 0; s < 2; ++s)
                sweep_x.apply(st.amp.data() + static_cast<std::size_t>(ir) * 2 + s,
                              stride_x);
        // kinetic rho: lines at fixed (x, s), stride 2
        for (int ix = 0; ix < nx; ++ix)
            for (int s = 0; s < 2; ++s)
                sweep_r.apply(st.amp.data() +
                                  static_cast<std::size_t>(ix) * nr * 2 + s,
                              2);
        half_potential(st);
        st.time += cfg.dt;
    }

    double energy(const CompositeState& st) const {
        // <V> pointwise + <T> by the same stencils the propagator uses
        double ev = 0.0;
        for (std::size_t i = 0; i < st.amp.size(); ++i)
            ev += potential[i] * std::norm(st.amp[i]);
        ev *= dx * dr;

        const double cx = cfg.units.hbar * cfg.units.hbar / (2.0 * cfg.mass_cm * dx * dx);
        const double cr = cfg.units.hbar * cfg.units.hbar / (2.0 * cfg.mass_r * dr * dr);
        double et = 0.0;
        for (int ix = 0; ix < nx; ++ix)
            for (int ir = 0; ir < nr; ++ir)
                for (int s = 0; s < 2; ++s) {
                    const cplx psi = st.at(ix, ir, s);
                    cplx lap_x = -2.0 * psi;
                    if (ix > 0) lap_x += st.at(ix - 1, ir, s);
                    if (ix + 1 < nx) lap_x += st.at(ix + 1, ir, s);
                    cplx lap_r = -2.0 * psi;
                    if (ir > 0) lap_r += st.at(ix, ir - 1, s);
                    if (ir + 1 < nr) lap_r += st.at(ix, ir + 1, s);
                    et += std::real(std::conj(psi) * (-cx * lap_x - cr * lap_r));
                }
        et *= dx * dr;
        return ev + et;
    }
};

// conditional R density matrices and their Hilbert-Schmidt overlap
struct BranchData {
    double p_plus = 0.0, p_minus = 0.0;
    double overlap = 1.0;
};

BranchData branch_overlap_of(const CompositeState& st) {
    const int nr = st.nrho, nx = st.nx;
    const double meas = st.dx * st.drho;
    std::vector<cplx> sig_p(static_cast<std::size_t>(nr) * nr, cplx(0.0));
    std::vector<cplx> sig_m(sig_p.size(), cplx(0.0));
    for (int ix = 0; ix < nx; ++ix)
        for (int r1 = 0; r1 < nr; ++r1)
            for (int r2 = 0; r2 < nr; ++r2) {
                sig_p[static_cast<std::size_t>(r1) * nr + r2] +=
                    st.at(ix, r1, 0) * std::conj(st.at(ix, r2, 0));
                sig_m[static_cast<std::size_t>(r1) * nr + r2] +=
                    st.at(ix, r1, 1) * std::conj(st.at(ix, r2, 1));
            }
    BranchData bd;
    for (int r = 0; r < nr; ++r) {
        bd.p_plus += sig_p[static_cast<std::size_t>(r) * nr + r].real() * meas;
        bd.p_minus += sig_m[static_cast<std::size_t>(r) * nr + r].real() * meas;
    }
    if (bd.p_plus < 1e-14 || bd.p_minus < 1e-14) {
        bd.overlap = 1.0;  // single-branch state: no pair to decohere
        return bd;
    }
    // Tr(sig_p sig_m), Tr(sig_p^2), Tr(sig_m^2); measure dx*drho per matrix
    double tr_pm = 0.0, tr_pp = 0.0, tr_mm = 0.0;
    for (int r1 = 0; r1 < nr; ++r1)
        for (int r2 = 0; r2 < nr; ++r2) {
            const cplx a = sig_p[static_cast<std::size_t>(r1) * nr + r2];
            const cplx b = sig_m[static_cast<std::size_t>(r2) * nr + r1];
            const cplx a2 = sig_p[static_cast<std::size_t>(r2) * nr + r1];
            const cplx b2 = sig_m[static_cast<std::size_t>(r1) * nr + r2];
            tr_pm += std::real(a * b);
            tr_pp += std::real(a * a2);
            tr_mm += std::real(b2 * b);
        }
    const double m2 = meas * meas;
    tr_pm *= m2;
    tr_pp *= m2;
    tr_mm *= m2;
    // cosine in Hilbert-Schmidt inner product; square root recovers
    // |<R_1|R_2>| when both conditional states are pure
    const double denom = std::sqrt(std::max(tr_pp * tr_mm, 1e-300));
    bd.overlap = std::sqrt(std::max(0.0, tr_pm / denom));
    return bd;
}

double purity_via_r_marginal(const CompositeState& st) {
    // Tr rho_{CM+S}^2 equals Tr rho_R^2 for a pure composite state, and
    // rho_R is the small matrix.
    const int nr = st.nrho, nx = st.nx;
    std::vector<cplx> g(static_cast<std::size_t>(nr) * nr, cplx(0.0));
    for (int ix = 0; ix < nx; ++ix)
        for (int s = 0; s < 2; ++s)
            for (int r1 = 0; r1 < nr; ++r1)
                for (int r2 = 0; r2 < nr; ++r2)
                    g[static_cast<std::size_t>(r1) * nr + r2] +=
                        st.at(ix, r1, s) * std::conj(st.at(ix, r2, s));
    const double meas = st.dx * st.drho;
    double purity = 0.0;
    for (const cplx& v : g) purity += std::norm(v);
    return purity * meas * meas;
}

SnapshotMetrics metrics_of(const CompositeState& st, const Engine& eng) {
    SnapshotMetrics m;
    m.time = st.time;
    m.norm = st.norm();
    m.purity = purity_via_r_marginal(st);
    const BranchData bd = branch_overlap_of(st);
    m.branch_overlap = bd.overlap;

    // conditional <x> per spin branch
    double xp = 0.0, xm = 0.0;
    for (int ix = 0; ix < st.nx; ++ix) {
        const double x = eng.cfg.cm_grid.at(ix);
        for (int ir = 0; ir < st.nrho; ++ir) {
            xp += x * std::norm(st.at(ix, ir, 0));
            xm += x * std::norm(st.at(ix, ir, 1));
        }
    }
    const double meas = st.dx * st.drho;
    if (bd.p_plus > 1e-14 && bd.p_minus > 1e-14)
        m.centroid_separation =
            std::abs(xp * meas / bd.p_plus - xm * meas / bd.p_minus);
    m.energy = eng.energy(st);
    return m;
}

} // namespace

double CompositeState::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s * dx * drho);
}

CompositeState initial_state(const SimConfig& cfg) {
    cfg.validate();
    CompositeState st;
    st.nx = cfg.cm_grid.points;
    st.nrho = cfg.r_grid.points;
    st.dx = cfg.cm_grid.step();
    st.drho = cfg.r_grid.step();
    st.amp.assign(static_cast<std::size_t>(st.nx) * st.nrho * 2, cplx(0.0));

    const std::vector<double> r0 = discrete_r_ground_state(cfg);
    const double spin_norm =
        std::sqrt(std::norm(cfg.spin_plus) + std::norm(cfg.spin_minus));
    const cplx chi[2] = {cfg.spin_plus / spin_norm, cfg.spin_minus / spin_norm};

    const double sigma = cfg.packet_width;
    for (int ix = 0; ix < st.nx; ++ix) {
        const double x = cfg.cm_grid.at(ix);
        const double d = x - cfg.packet_center;
        const cplx g = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)),
                                  cfg.packet_momentum * x / cfg.units.hbar);
        for (int ir = 0; ir < st.nrho; ++ir)
            for (int s = 0; s < 2; ++s) st.at(ix, ir, s) = g * r0[ir] * chi[s];
    }
    const double n = st.norm();
    for (auto& a : st.amp) a /= n;
    return st;
}

Trajectory evolve(const SimConfig& cfg, const SnapshotCallback& on_snapshot) {
    cfg.validate();  // stability guard fires before any setup or stepping
    Engine eng(cfg);
    Trajectory traj;
    traj.config = cfg;

    CompositeState st = initial_state(cfg);
    const long n_steps = std::lround(cfg.total_time / cfg.dt);

    auto snapshot = [&](const CompositeState& s) {
        const SnapshotMetrics m = metrics_of(s, eng);
        if (!std::isfinite(m.norm) || !std::isfinite(m.purity))
            throw NumericalBlowupError(
                "evolve: non-finite state at t=" + std::to_string(s.time),
                traj.metrics.empty() ? 0 : traj.metrics.size() - 1);
        traj.metrics.push_back(m);
        if (cfg.keep_states) traj.states.push_back(s);
        if (on_snapshot) on_snapshot(s, traj.metrics.size() - 1);
    };

    snapshot(st);
    for (long step = 1; step <= n_steps; ++step) {
        eng.step(st);
        if (step % cfg.snapshot_stride == 0 || step == n_steps) snapshot(st);
    }
    traj.final_state = std::move(st);
    return traj;
}

ReducedDensityMatrix reduce(const CompositeState& st) {
    if (std::abs(st.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("reduce: state is not normalized");

    const int nx = st.nx, nr = st.nrho;
    ReducedDensityMatrix rdm;
    rdm.nx = nx;
    rdm.dx = st.dx;
    rdm.rho.assign(static_cast<std::size_t>(2 * nx) * 2 * nx, cplx(0.0));

    // rho[(s,x),(s',x')] = sum_r psi(x,r,s) conj(psi(x',r,s')) drho * dx
    for (int s1 = 0; s1 < 2; ++s1)
        for (int x1 = 0; x1 < nx; ++x1)
            for (int s2 = 0; s2 < 2; ++s2)
                for (int x2 = 0; x2 < nx; ++x2) {
                    cplx acc(0.0);
                    for (int r = 0; r < nr; ++r)
                        acc += st.at(x1, r, s1) * std::conj(st.at(x2, r, s2));
                    rdm.rho[static_cast<std::size_t>(s1 * nx + x1) * 2 * nx +
                            (s2 * nx + x2)] = acc * st.drho * st.dx;
                }

    for (int i = 0; i < 2 * nx; ++i) rdm.trace_value += rdm.at(i, i).real();
    for (const cplx& v : rdm.rho) rdm.purity += std::norm(v);
    rdm.branch_overlap = branch_overlap_of(st).overlap;
    return rdm;
}

std::vector<SnapshotMetrics> decoherence_metrics(const Trajectory& t) {
    if (t.metrics.size() < 2)
        throw std::invalid_argument("decoherence_metrics: need >= 2 snapshots");
    if (!t.states.empty()) {
        Engine eng(t.config);
        std::vector<SnapshotMetrics> out;
        out.reserve(t.states.size());
        for (const auto& st : t.states) out.push_back(metrics_of(st, eng));
        return out;
    }
    return t.metrics;
}

RecurrenceReport recurrence_probe(const Trajectory& t, double threshold) {
    RecurrenceReport rep;
    rep.threshold = threshold;
    for (const auto& m : t.metrics) {
        if (m.branch_overlap < rep.min_overlap) {
            rep.min_overlap = m.branch_overlap;
            rep.min_time = m.time;
        }
        if (!rep.dropped_below) {
            if (m.branch_overlap < threshold) {
                rep.dropped_below = true;
                rep.drop_time = m.time;
            }
        } else {
            // peak coherence recovered after decohering past the threshold
            if (m.branch_overlap > rep.revival_amplitude) {
                rep.revival_amplitude = m.branch_overlap;
            }
            if (!rep.revival_detected && m.branch_overlap >= threshold) {
                rep.revival_detected = true;
                rep.revival_time = m.time;
            }
        }
    }
    return rep;
}

void dump_state(const CompositeState& st, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_state: cannot open " + path);
    out.write("ATSG", 4);
    const std::uint32_t version = 1, nx = st.nx, nr = st.nrho, ns = 2;
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&nx), 4);
    out.write(reinterpret_cast<const char*>(&nr), 4);
    out.write(reinterpret_cast<const char*>(&ns), 4);
    out.write(reinterpret_cast<const char*>(&st.time), 8);
    for (const cplx& a : st.amp) {
        const float re = static_cast<float>(a.real());
        const float im = static_cast<float>(a.imag());
        out.write(reinterpret_cast<const char*>(&re), 4);
        out.write(reinterpret_cast<const char*>(&im), 4);
    }
}

} // namespace atomsg
