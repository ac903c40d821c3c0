#include "atomsg/atom.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace atomsg {

void AtomSpec::validate() const {
    if (Z < 1) throw std::domain_error("AtomSpec: Z must be >= 1");
    if (A < Z) throw std::domain_error("AtomSpec: A must be >= Z");
}

void Orbital::validate() const {
    if (n < 1) throw std::domain_error("Orbital: n must be >= 1");
    if (l < 0 || l >= n) throw std::domain_error("Orbital: requires 0 <= l < n");
}

int ShellConfig::orbital_count() const {
    int total = 0;
    for (const auto& o : occupied) total += multiplicity(o);
    return total;
}

int ShellConfig::n_max() const {
    int m = 0;
    for (const auto& o : occupied) m = std::max(m, o.n);
    return m;
}

void ShellConfig::validate() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& o : occupied) {
        o.validate();
        if (!seen.insert({o.n, o.l}).second)
            throw std::domain_error("ShellConfig: duplicate (n,l) pair");
    }
}

int closed_shell_z(int n_max) {
    if (n_max < 1 || n_max > 12)
        throw std::domain_error("closed_shell_z: n_max must be in [1,12]");
    // 2 * sum n^2 = n(n+1)(2n+1)/3
    return n_max * (n_max + 1) * (2 * n_max + 1) / 3;
}

const std::vector<int>& closed_shell_z_values() {
    static const std::vector<int> vals = [] {
        std::vector<int> v;
        for (int n = 1; n <= 12; ++n) v.push_back(closed_shell_z(n));
        return v;
    }();
    return vals;
}

ShellConfig shells_for(int z_closed) {
    const auto& vals = closed_shell_z_values();
    auto it = std::find(vals.begin(), vals.end(), z_closed);
    if (it == vals.end()) {
        // name the nearest closed-shell values on both sides
        int below = 0, above = 0;
        for (int v : vals) {
            if (v < z_closed) below = v;
            if (v > z_closed) { above = v; break; }
        }
        std::string msg = "shells_for: Z=" + std::to_string(z_closed) +
                          " is not a closed-shell value; nearest are";
        if (below > 0) msg += " " + std::to_string(below);
        if (above > 0) msg += (below > 0 ? " and " : " ") + std::to_string(above);
        throw std::domain_error(msg);
    }
    int n_max = static_cast<int>(it - vals.begin()) + 1;
    ShellConfig cfg;
    for (int n = 1; n <= n_max; ++n)
        for (int l = 0; l < n; ++l)
            cfg.occupied.push_back({n, l});
    return cfg;
}

} // namespace atomsg
