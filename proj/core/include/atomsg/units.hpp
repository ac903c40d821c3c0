#pragma once

#include <stdexcept>

namespace atomsg {

// Natural units: k = a_mu = hbar = 1, masses in electron masses, mu_B = 1.
// SI conversion is an output-formatting concern, never done internally.
struct UnitSystem {
    double k = 1.0;      // Coulomb constant e^2/(4 pi eps0), energy*length
    double a_mu = 1.0;   // analog of the Bohr radius
    double hbar = 1.0;
    double m_e = 1.0;
    double m_p = 1836.0;
    double m_n = 1836.0;
    double mu_B = 1.0;   // magnetic moment unit

    void validate() const {
        if (k <= 0 || a_mu <= 0 || hbar <= 0 || m_e <= 0 || m_p <= 0 ||
            m_n <= 0 || mu_B <= 0)
            throw std::domain_error("UnitSystem: all constants must be positive");
        if (m_p / m_e <= 1000.0)
            throw std::domain_error("UnitSystem: m_p/m_e must exceed 1000");
    }
};

} // namespace atomsg
