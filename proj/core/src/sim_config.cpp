#include "atomsg/sim_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "atomsg/errors.hpp"

namespace atomsg {

double SimConfig::max_kinetic_eigenvalue() const {
    const double hb = units.hbar;
    const double dx = cm_grid.step(), dr = r_grid.step();
    return 2.0 * hb * hb / (mass_cm * dx * dx) + 2.0 * hb * hb / (mass_r * dr * dr);
}

void SimConfig::validate() const {
    units.validate();
    if (cm_grid.points < 16 || r_grid.points < 16)
        throw ConfigError("SimConfig: grids need at least 16 points");
    if (!(cm_grid.max > cm_grid.min) || !(r_grid.max > r_grid.min))
        throw ConfigError("SimConfig: grid max must exceed min");
    if (!(mass_cm > 0.0)) throw ConfigError("SimConfig: mass.cm must be positive");
    if (!(mass_r > 0.0)) throw ConfigError("SimConfig: mass.r must be positive");
    if (omega_r < 0.0) throw ConfigError("SimConfig: r_potential.omega must be >= 0");
    if (!(packet_width > 0.0)) throw ConfigError("SimConfig: initial.width must be positive");
    if (!(dt > 0.0)) throw ConfigError("SimConfig: time.dt must be positive");
    if (!(total_time > 0.0)) throw ConfigError("SimConfig: time.total must be positive");
    if (snapshot_stride < 1) throw ConfigError("SimConfig: output.snapshot_stride must be >= 1");
    const double spin_norm = std::norm(spin_plus) + std::norm(spin_minus);
    if (spin_norm <= 0.0) throw ConfigError("SimConfig: initial.spin must be nonzero");
    if (coupling.enabled && coupling.source == CouplingSource::profile &&
        coupling.profile_path.empty())
        throw ConfigError("SimConfig: coupling.profile_path required for source=profile");
    if (dt * max_kinetic_eigenvalue() >= 0.5)
        throw StabilityError(
            "SimConfig: dt * max kinetic eigenvalue >= 0.5; decrease time.dt "
            "or coarsen the grids");
}

namespace {

struct KeyValues {
    std::map<std::string, std::string> kv;

    const std::string& require(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError("missing required config key: " + key);
        return it->second;
    }
    bool has(const std::string& key) const { return kv.count(key) > 0; }
};

double to_number(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    double d = to_number(key, v);
    if (d != std::floor(d))
        throw ConfigError("config key " + key + ": not an integer: '" + v + "'");
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config key " + key + ": expected true/false, got '" + v + "'");
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "cm_grid.min", "cm_grid.max", "cm_grid.points",
        "r_grid.min", "r_grid.max", "r_grid.points",
        "mass.cm", "mass.r",
        "field.gradient", "r_potential.omega",
        "coupling.enabled", "coupling.lambda", "coupling.offset",
        "coupling.source", "coupling.Z", "coupling.profile_path",
        "initial.center", "initial.width", "initial.momentum", "initial.spin",
        "time.dt", "time.total",
        "output.snapshot_stride", "output.dump_states",
    };
    return keys;
}

} // namespace

SimConfig parse_sim_config(const std::string& text) {
    KeyValues keys;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            if (auto e = s.find_last_not_of(ws); e != std::string::npos)
                s.erase(e + 1);
            else
                s.clear();
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key))
            throw ConfigError("unknown config key: " + key);
        if (!keys.kv.emplace(key, value).second)
            throw ConfigError("duplicate config key: " + key);
    }

    SimConfig cfg;
    cfg.cm_grid = {to_number("cm_grid.min", keys.require("cm_grid.min")),
                   to_number("cm_grid.max", keys.require("cm_grid.max")),
                   to_int("cm_grid.points", keys.require("cm_grid.points"))};
    cfg.r_grid = {to_number("r_grid.min", keys.require("r_grid.min")),
                  to_number("r_grid.max", keys.require("r_grid.max")),
                  to_int("r_grid.points", keys.require("r_grid.points"))};
    cfg.mass_cm = to_number("mass.cm", keys.require("mass.cm"));
    cfg.mass_r = to_number("mass.r", keys.require("mass.r"));
    cfg.dt = to_number("time.dt", keys.require("time.dt"));
    cfg.total_time = to_number("time.total", keys.require("time.total"));

    if (keys.has("field.gradient"))
        cfg.field_gradient = to_number("field.gradient", keys.kv.at("field.gradient"));
    if (keys.has("r_potential.omega"))
        cfg.omega_r = to_number("r_potential.omega", keys.kv.at("r_potential.omega"));

    if (keys.has("coupling.enabled"))
        cfg.coupling.enabled = to_bool("coupling.enabled", keys.kv.at("coupling.enabled"));
    if (keys.has("coupling.lambda"))
        cfg.coupling.lambda = to_number("coupling.lambda", keys.kv.at("coupling.lambda"));
    if (keys.has("coupling.offset"))
        cfg.coupling.offset = to_number("coupling.offset", keys.kv.at("coupling.offset"));
    if (keys.has("coupling.source")) {
        const std::string& s = keys.kv.at("coupling.source");
        if (s == "closed-form")
            cfg.coupling.source = CouplingSource::closed_form;
        else if (s == "analytic")
            cfg.coupling.source = CouplingSource::analytic;
        else if (s == "profile")
            cfg.coupling.source = CouplingSource::profile;
        else
            throw ConfigError("config key coupling.source: expected "
                              "closed-form|analytic|profile, got '" + s + "'");
    }
    if (keys.has("coupling.Z"))
        cfg.coupling.Z = to_int("coupling.Z", keys.kv.at("coupling.Z"));
    if (keys.has("coupling.profile_path"))
        cfg.coupling.profile_path = keys.kv.at("coupling.profile_path");

    if (keys.has("initial.center"))
        cfg.packet_center = to_number("initial.center", keys.kv.at("initial.center"));
    if (keys.has("initial.width"))
        cfg.packet_width = to_number("initial.width", keys.kv.at("initial.width"));
    if (keys.has("initial.momentum"))
        cfg.packet_momentum = to_number("initial.momentum", keys.kv.at("initial.momentum"));
    if (keys.has("initial.spin")) {
        std::istringstream sp(keys.kv.at("initial.spin"));
        double a, b, c, d;
        if (!(sp >> a >> b >> c >> d))
            throw ConfigError("config key initial.spin: expected 4 numbers "
                              "(re+ im+ re- im-)");
        cfg.spin_plus = {a, b};
        cfg.spin_minus = {c, d};
    }

    if (keys.has("output.snapshot_stride"))
        cfg.snapshot_stride =
            to_int("output.snapshot_stride", keys.kv.at("output.snapshot_stride"));
    if (keys.has("output.dump_states"))
        cfg.dump_states = to_bool("output.dump_states", keys.kv.at("output.dump_states"));

    cfg.validate();
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sim_config(buf.str());
}

} // namespace atomsg
