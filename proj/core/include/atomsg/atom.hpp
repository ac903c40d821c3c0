#pragma once

#include <string>
#include <vector>

namespace atomsg {

struct AtomSpec {
    int Z = 1;  // proton (= electron) count
    int A = 1;  // mass number

    bool realistic() const { return Z <= 118; }
    void validate() const;  // A >= Z >= 1
};

struct Orbital {
    int n = 1;  // principal quantum number
    int l = 0;  // 0 <= l <= n-1

    void validate() const;
    bool operator==(const Orbital&) const = default;
};

// Idealized hydrogenic closed/partial shell occupation. Multiplicity per
// (n,l) is the spatial 2l+1; the spin_doubling flag doubles it for
// sensitivity studies (the angular reduction itself carries no spin factor).
struct ShellConfig {
    std::vector<Orbital> occupied;
    bool spin_doubling = false;

    int multiplicity(const Orbital& o) const {
        return (spin_doubling ? 2 : 1) * (2 * o.l + 1);
    }
    int orbital_count() const;  // sum of multiplicities
    int n_max() const;
    void validate() const;  // no duplicate (n,l)
};

// Z = 2 * sum_{n<=n_max} n^2, the hydrogenic closed-shell electron count.
// Valid n_max: 1..12.
int closed_shell_z(int n_max);

// Inverse of closed_shell_z: builds the full shell list for a closed-shell Z.
// Non-closed-shell Z throws std::domain_error naming the nearest valid values.
ShellConfig shells_for(int z_closed);

// All closed-shell Z values for n_max = 1..12, ascending.
const std::vector<int>& closed_shell_z_values();

} // namespace atomsg
