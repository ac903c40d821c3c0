// atomsg: batch CLI over the effective-interaction engine and the SG
// simulator. Every file-emitting subcommand writes a manifest.json next to
// its outputs; reruns with identical inputs are byte-identical (set
// SOURCE_DATE_EPOCH to pin the manifest timestamp too).

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atomsg/composite.hpp"
#include "atomsg/csv.hpp"
#include "atomsg/errors.hpp"
#include "atomsg/manifest.hpp"
#include "atomsg/oracle.hpp"
#include "atomsg/potential.hpp"
#include "atomsg/simulator.hpp"

namespace fs = std::filesystem;
using namespace atomsg;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitStability = 4;

struct RangeSpec {
    double min = 0.0, max = 0.0;
    int count = 0;

    std::vector<double> points() const {
        std::vector<double> v;
        v.reserve(count);
        for (int i = 0; i < count; ++i)
            v.push_back(min + (max - min) * i / (count - 1));
        return v;
    }
};

// min:max:count with inclusive endpoints
RangeSpec parse_range(const std::string& s) {
    RangeSpec r;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("range", "expected min:max:count, got '" + s + "'");
    try {
        r.min = std::stod(s.substr(0, c1));
        r.max = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        r.count = std::stoi(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "non-numeric field in '" + s + "'");
    }
    if (r.count < 2) throw CLI::ValidationError("range", "count must be >= 2");
    if (r.max < r.min) throw CLI::ValidationError("range", "max must be >= min");
    return r;
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

void fit_line(const std::vector<double>& x, const std::vector<double>& y,
              double& slope, double& intercept, double& r2) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
    const double num = n * sxy - sx * sy;
    r2 = num * num / ((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// ---------------------------------------------------------------- beta ----

int cmd_beta(int closed_shells, const std::vector<int>& z_list,
             const std::string& out) {
    std::vector<int> zs = z_list;
    if (zs.empty()) {
        if (closed_shells < 2)
            throw CLI::ValidationError("--closed-shells", "need n_max >= 2 (Z >= 10)");
        for (int n = 2; n <= closed_shells; ++n) zs.push_back(closed_shell_z(n));
    }
    const UnitSystem u;
    const fs::path dir = ensure_out_dir(out);

    CsvTable table;
    table.header = {"Z", "beta_over_k", "exact_numerator", "exact_denominator"};
    std::vector<double> xs, ys;
    for (int z : zs) {
        const BetaResult b = beta(z, u);  // throws for non-closed-shell Z
        table.add_row(
            {std::to_string(z), format_double(b.beta / u.k),
             boost::multiprecision::numerator(b.beta_over_k_exact).str(),
             boost::multiprecision::denominator(b.beta_over_k_exact).str()});
        xs.push_back(z);
        ys.push_back(b.beta / u.k);
    }
    const fs::path csv_path = dir / "beta.csv";
    table.write(csv_path.string());

    SvgSeries series;
    series.x = xs;
    series.y = ys;
    write_svg_plot((dir / "fig1.svg").string(), {series},
                   "beta(Z) for closed shells", "Z", "beta / k");

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const BetaResult b = beta(static_cast<int>(xs[i]), u);
        rows.push_back(
            {{"Z", static_cast<int>(xs[i])},
             {"beta_over_k", ys[i]},
             {"numerator", boost::multiprecision::numerator(b.beta_over_k_exact).str()},
             {"denominator",
              boost::multiprecision::denominator(b.beta_over_k_exact).str()}});
    }
    {
        std::ofstream f(dir / "beta.json", std::ios::binary);
        f << rows.dump(2) << '\n';
    }

    double slope, intercept, r2;
    fit_line(xs, ys, slope, intercept, r2);
    nlohmann::ordered_json fit{{"slope", slope},
                               {"intercept", intercept},
                               {"r_squared", r2},
                               {"points", xs.size()}};
    {
        std::ofstream f(dir / "fit.json", std::ios::binary);
        f << fit.dump(2) << '\n';
    }

    RunManifest m;
    m.command = "beta";
    m.version = kVersion;
    m.parameters["z_list"] = [&] {
        std::string s;
        for (int z : zs) s += (s.empty() ? "" : ",") + std::to_string(z);
        return s;
    }();
    m.record_output(csv_path.string());
    m.record_output((dir / "beta.json").string());
    m.record_output((dir / "fig1.svg").string());
    m.record_output((dir / "fit.json").string());
    m.write((dir / "manifest.json").string());
    std::cout << "beta: " << zs.size() << " rows -> " << csv_path.string()
              << " (fit slope " << format_double(slope) << ", R^2 "
              << format_double(r2) << ")\n";
    return kExitOk;
}

// ----------------------------------------------------------- potential ----

int cmd_potential(int Z, const std::string& omega_range,
                  std::vector<std::string> sources, long mc_samples,
                  std::uint64_t seed, const std::string& out) {
    if (sources.empty()) sources = {"closed"};
    for (const auto& s : sources)
        if (s != "closed" && s != "quad" && s != "mc")
            throw CLI::ValidationError("--sources", "unknown source '" + s + "'");
    const bool want_closed = std::count(sources.begin(), sources.end(), "closed") > 0;
    const bool want_quad = std::count(sources.begin(), sources.end(), "quad") > 0;
    const bool want_mc = std::count(sources.begin(), sources.end(), "mc") > 0;

    const RangeSpec range = parse_range(omega_range);
    const UnitSystem u;
    const ShellConfig shells = shells_for(Z);
    const CoefficientTable table = build_coefficients(shells);
    const std::vector<double> grid = range.points();

    bool convergence_trouble = false;
    CsvTable csv;
    csv.header = {"omega"};
    if (want_closed) csv.header.push_back("closed");
    if (want_quad) {
        csv.header.push_back("quad");
        csv.header.push_back("quad_flag");
    }
    if (want_mc) {
        csv.header.push_back("mc");
        csv.header.push_back("mc_stderr");
    }
    const bool multi = (int(want_closed) + int(want_quad) + int(want_mc)) > 1;
    if (multi) csv.header.push_back("max_rel_dev");

    McConfig mc;
    mc.sample_count = mc_samples;
    mc.seed = seed;

    for (double om : grid) {
        std::vector<std::string> row{format_double(om)};
        std::vector<double> values;
        if (want_closed) {
            const double v = potential_closed_form(Z, table, om, u);
            row.push_back(format_double(v));
            values.push_back(v);
        }
        if (want_quad) {
            try {
                const double v = radial_oracle(Z, shells, om, u);
                row.push_back(format_double(v));
                row.push_back("ok");
                values.push_back(v);
            } catch (const ConvergenceError& e) {
                row.push_back(format_double(e.best_estimate));
                row.push_back("unconverged");
                values.push_back(e.best_estimate);
                convergence_trouble = true;
            }
        }
        if (want_mc) {
            const McEstimate est = mc_oracle(Z, shells, {0.0, 0.0, om}, u, mc);
            row.push_back(format_double(est.mean));
            row.push_back(format_double(est.std_error));
            values.push_back(est.mean);
        }
        if (multi) {
            const double lo = *std::min_element(values.begin(), values.end());
            const double hi = *std::max_element(values.begin(), values.end());
            row.push_back(format_double((hi - lo) / std::max(std::abs(hi), 1e-300)));
        }
        csv.add_row(row);
    }

    const fs::path dir = ensure_out_dir(out);
    const fs::path csv_path = dir / "potential.csv";
    csv.write(csv_path.string());

    {
        nlohmann::ordered_json j;
        j["Z"] = Z;
        j["columns"] = csv.header;
        nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
        for (const auto& r : csv.rows) jrows.push_back(r);
        j["rows"] = jrows;
        std::ofstream f(dir / "potential.json", std::ios::binary);
        f << j.dump(2) << '\n';
    }

    RunManifest m;
    m.command = "potential";
    m.version = kVersion;
    m.parameters["Z"] = std::to_string(Z);
    m.parameters["omega"] = omega_range;
    m.parameters["sources"] = [&] {
        std::string s;
        for (const auto& x : sources) s += (s.empty() ? "" : ",") + x;
        return s;
    }();
    if (want_mc) {
        m.parameters["mc_samples"] = std::to_string(mc.sample_count);
        m.seeds.push_back(mc.seed);
    }
    m.record_output(csv_path.string());
    m.record_output((dir / "potential.json").string());
    m.write((dir / "manifest.json").string());

    std::cout << "potential: " << grid.size() << " rows -> " << csv_path.string()
              << (convergence_trouble ? " (UNCONVERGED rows flagged)" : "") << '\n';
    return convergence_trouble ? kExitConvergence : kExitOk;
}

// -------------------------------------------------------------- oracle ----

int cmd_oracle(int Z, const std::string& omega_range, long mc_samples,
               std::uint64_t seed, int mc_points, double tolerance,
               const std::string& out) {
    const RangeSpec range = parse_range(omega_range);
    const UnitSystem u;
    const ShellConfig shells = shells_for(Z);

    std::optional<McConfig> mc;
    if (mc_samples > 0) {
        McConfig c;
        c.sample_count = mc_samples;
        c.seed = seed;
        mc = c;
    }

    const CrossValidationReport rep =
        cross_validate(Z, shells, range.points(), u, tolerance, {}, mc, mc_points);

    CsvTable csv;
    csv.header = {"omega", "closed", "quad", "mc", "mc_stderr", "rel_dev"};
    for (const auto& row : rep.rows)
        csv.add_row({format_double(row.omega), format_double(row.closed),
                     format_double(row.quad),
                     row.mc ? format_double(*row.mc) : "",
                     row.mc_stderr ? format_double(*row.mc_stderr) : "",
                     format_double(row.rel_dev)});
    const fs::path dir = ensure_out_dir(out);
    const fs::path csv_path = dir / "oracle.csv";
    csv.write(csv_path.string());

    RunManifest m;
    m.command = "oracle";
    m.version = kVersion;
    m.parameters["Z"] = std::to_string(Z);
    m.parameters["omega"] = omega_range;
    m.parameters["tolerance"] = format_double(tolerance);
    if (mc) m.seeds.push_back(mc->seed);
    m.record_output(csv_path.string());
    m.write((dir / "manifest.json").string());

    std::cout << "oracle: max closed-vs-quad rel dev "
              << format_double(rep.max_rel_dev) << " vs tolerance "
              << format_double(tolerance) << " -> "
              << (rep.pass ? "PASS" : "FAIL") << '\n';
    return rep.pass ? kExitOk : kExitConvergence;
}

// --------------------------------------------------------------- kappa ----

int cmd_kappa(int Z, int A) {
    const UnitSystem u;
    nlohmann::ordered_json j;
    j["Z"] = Z;
    j["A"] = A;
    if (A < 2) {
        j["error"] = "no relative system";  // hydrogen / bare nucleon case
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }
    const KappaParams kp = kappa_params({Z, A}, u);
    j["kappa1"] = kp.kappa1;
    j["kappa2"] = kp.kappa2;
    j["kappa3"] = kp.kappa3;
    j["kappa"] = kp.kappa;
    j["adiabatic_error_bound"] = kp.adiabatic_error_bound;
    j["electrons_separable"] = kp.electrons_separable;
    j["cm_r_separable"] = kp.cm_r_separable;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

// -------------------------------------------------------------- masses ----

int cmd_masses(int Z, int A) {
    const UnitSystem u;
    const NucleusMasses m = nucleus_masses({Z, A}, u);
    nlohmann::ordered_json j;
    j["Z"] = Z;
    j["A"] = A;
    j["M_nucleus"] = m.M_nucleus;
    j["mu_reduced"] = m.mu_reduced;
    j["M_atom"] = m.M_atom;
    j["degenerate"] = m.degenerate;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------ simulate ----

int cmd_simulate(const std::string& config_path, const std::string& out) {
    const SimConfig cfg = load_sim_config(config_path);
    const fs::path dir = ensure_out_dir(out);

    std::vector<std::string> dumped;
    SnapshotCallback on_snapshot;
    if (cfg.dump_states) {
        on_snapshot = [&](const CompositeState& st, std::size_t idx) {
            char name[32];
            std::snprintf(name, sizeof name, "state_%06zu.atsg", idx);
            const fs::path p = dir / name;
            dump_state(st, p.string());
            dumped.push_back(p.string());
        };
    }

    const Trajectory traj = evolve(cfg, on_snapshot);

    CsvTable csv;
    csv.header = {"time",     "norm",
                  "purity",   "branch_overlap",
                  "centroid_separation", "energy"};
    for (const auto& m : traj.metrics)
        csv.add_row({format_double(m.time), format_double(m.norm),
                     format_double(m.purity), format_double(m.branch_overlap),
                     format_double(m.centroid_separation),
                     format_double(m.energy)});
    const fs::path csv_path = dir / "metrics.csv";
    csv.write(csv_path.string());

    RunManifest m;
    m.command = "simulate";
    m.version = kVersion;
    m.parameters["config"] = config_path;
    m.parameters["config_digest"] = file_digest(config_path);
    m.record_output(csv_path.string());
    for (const auto& p : dumped) m.record_output(p);
    m.write((dir / "manifest.json").string());

    std::cout << "simulate: " << traj.metrics.size() << " snapshots -> "
              << csv_path.string() << " (final purity "
              << format_double(traj.metrics.back().purity) << ", overlap "
              << format_double(traj.metrics.back().branch_overlap) << ")\n";
    return kExitOk;
}

// ------------------------------------------------- transforms-selftest ----

int cmd_transforms_selftest(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    std::uniform_real_distribution<double> mass(0.1, 50.0);
    std::uniform_int_distribution<int> size(2, 20);

    int failures = 0;
    auto report = [&](const std::string& name, bool ok, double worst) {
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << name << " (worst dev "
                  << format_double(worst) << ")\n";
        if (!ok) ++failures;
    };

    double worst_rt = 0.0, worst_equiv = 0.0, worst_mu = 0.0;
    for (int t = 0; t < trials; ++t) {
        ParticleSet ps;
        const int n = size(rng);
        for (int i = 0; i < n; ++i) {
            ps.positions.push_back({pos(rng), pos(rng), pos(rng)});
            ps.masses.push_back(mass(rng));
        }
        const auto d = decompose(ps);
        const auto back = recompose(d);
        for (std::size_t i = 0; i < back.size(); ++i)
            for (int c = 0; c < 3; ++c)
                worst_rt = std::max(worst_rt,
                                    std::abs(back[i][c] - ps.positions[i][c]));

        ParticleSet moved = ps;
        const Vec3 shift{pos(rng), pos(rng), pos(rng)};
        for (auto& p : moved.positions)
            for (int c = 0; c < 3; ++c) p[c] += shift[c];
        const auto d2 = decompose(moved);
        for (int c = 0; c < 3; ++c)
            worst_equiv = std::max(worst_equiv,
                                   std::abs(d2.r_cm[c] - d.r_cm[c] - shift[c]));
        for (std::size_t a = 0; a < d.rel_coords.size(); ++a)
            for (int c = 0; c < 3; ++c)
                worst_equiv = std::max(
                    worst_equiv,
                    std::abs(d2.rel_coords[a][c] - d.rel_coords[a][c]));

        for (std::size_t a = 0; a < d.reduced_masses.size(); ++a) {
            const double m = ps.masses[a + 1];
            const double lhs = 1.0 / d.reduced_masses[a];
            const double rhs = 1.0 / m + 1.0 / (d.total_mass - m);
            worst_mu = std::max(worst_mu, std::abs(lhs - rhs) / rhs);
        }
    }
    report("decompose/recompose round trip", worst_rt < 1e-12, worst_rt);
    report("translation equivariance", worst_equiv < 1e-12, worst_equiv);
    report("reduced-mass identity", worst_mu < 1e-12, worst_mu);
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"atomsg: effective CM-R interaction engine and SG decoherence simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* beta_cmd = app.add_subcommand(
        "beta", "beta(Z) over closed shells: CSV, SVG plot, linear fit");
    int beta_shells = 0;
    std::vector<int> beta_zs;
    std::string beta_out = "out";
    beta_cmd->add_option("--closed-shells", beta_shells,
                         "emit Z = closed_shell_Z(n) for n = 2..N");
    beta_cmd->add_option("--z-list", beta_zs, "explicit closed-shell Z values")
        ->delimiter(',');
    beta_cmd->add_option("--out", beta_out, "output directory");

    auto* pot_cmd = app.add_subcommand(
        "potential", "V(Omega) profile from one or more sources");
    int pot_z = 10;
    std::string pot_range;
    std::vector<std::string> pot_sources;
    long pot_mc_samples = 1'000'000;
    std::uint64_t pot_seed = 1;
    std::string pot_out = "out";
    pot_cmd->add_option("--Z", pot_z, "closed-shell proton number")->required();
    pot_cmd->add_option("--omega", pot_range, "grid min:max:count (inclusive)")
        ->required();
    pot_cmd->add_option("--sources", pot_sources, "closed,quad,mc")->delimiter(',');
    pot_cmd->add_option("--mc-samples", pot_mc_samples, "samples per MC point");
    pot_cmd->add_option("--seed", pot_seed, "MC seed");
    pot_cmd->add_option("--out", pot_out, "output directory");

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "closed form vs quadrature vs MC cross-validation");
    int orc_z = 10;
    std::string orc_range;
    long orc_mc_samples = 0;
    std::uint64_t orc_seed = 1;
    int orc_mc_points = 5;
    double orc_tol = 1e-8;
    std::string orc_out = "out";
    oracle_cmd->add_option("--Z", orc_z, "closed-shell proton number")->required();
    oracle_cmd->add_option("--omega", orc_range, "grid min:max:count")->required();
    oracle_cmd->add_option("--mc-samples", orc_mc_samples,
                           "MC samples per spot point (0 = skip MC)");
    oracle_cmd->add_option("--seed", orc_seed, "MC seed");
    oracle_cmd->add_option("--mc-points", orc_mc_points, "number of MC spot rows");
    oracle_cmd->add_option("--tolerance", orc_tol, "closed-vs-quad rel tolerance");
    oracle_cmd->add_option("--out", orc_out, "output directory");

    auto* kappa_cmd =
        app.add_subcommand("kappa", "adiabaticity parameters as JSON on stdout");
    int kz = 1, ka = 1;
    kappa_cmd->add_option("--Z", kz, "proton number")->required();
    kappa_cmd->add_option("--A", ka, "mass number")->required();

    auto* masses_cmd =
        app.add_subcommand("masses", "CM and reduced masses as JSON on stdout");
    int mz = 1, ma = 1;
    masses_cmd->add_option("--Z", mz, "proton number")->required();
    masses_cmd->add_option("--A", ma, "mass number")->required();

    auto* sim_cmd =
        app.add_subcommand("simulate", "run the SG model from a config file");
    std::string sim_config, sim_out = "out";
    sim_cmd->add_option("--config", sim_config, "key = value config file")
        ->required();
    sim_cmd->add_option("--out", sim_out, "output directory");

    auto* xform_cmd = app.add_subcommand(
        "transforms-selftest", "randomized CM/relative transform checks");
    std::uint64_t xf_seed = 20240811;
    int xf_trials = 200;
    xform_cmd->add_option("--seed", xf_seed, "RNG seed");
    xform_cmd->add_option("--trials", xf_trials, "number of random particle sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*beta_cmd) return cmd_beta(beta_shells, beta_zs, beta_out);
        if (*pot_cmd)
            return cmd_potential(pot_z, pot_range, pot_sources, pot_mc_samples,
                                 pot_seed, pot_out);
        if (*oracle_cmd)
            return cmd_oracle(orc_z, orc_range, orc_mc_samples, orc_seed,
                              orc_mc_points, orc_tol, orc_out);
        if (*kappa_cmd) {
            if (ka < kz) {
                std::cerr << "kappa: A must be >= Z\n";
                return kExitUsage;
            }
            return cmd_kappa(kz, ka);
        }
        if (*masses_cmd) return cmd_masses(mz, ma);
        if (*sim_cmd) return cmd_simulate(sim_config, sim_out);
        if (*xform_cmd) return cmd_transforms_selftest(xf_seed, xf_trials);
    } catch (const StabilityError& e) {
        std::cerr << "stability: " << e.what() << '\n';
        return kExitStability;
    } catch (const ConfigError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
