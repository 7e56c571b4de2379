#include "triores/units.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace triores {

void check_beta(double beta) {
    if (!(beta >= beta_min && beta <= beta_max))
        throw DomainError("mass ratio beta = " + std::to_string(beta) +
                          " outside supported range [1/20, 20]");
}

MassConfig mass_config(double beta) {
    check_beta(beta);
    MassConfig mc;
    mc.beta = beta;
    mc.m_x = (1.0 + beta) / (2.0 * beta);
    mc.m_b = (1.0 + beta) / 2.0;
    return mc;
}

double MassConfig::mu_pair(int k) const {
    switch (k) {
    case 1: return m_b / 2.0;                    // BB
    case 2:
    case 3: return m_x * m_b / (m_x + m_b);      // BX, equals 1/2
    default: throw DomainError("Jacobi set index must be 1, 2 or 3");
    }
}

double MassConfig::mu_third(int k) const {
    switch (k) {
    case 1: return m_x * (2.0 * m_b) / (m_x + 2.0 * m_b);
    case 2:
    case 3: return m_b * (m_x + m_b) / (m_b + m_x + m_b);
    default: throw DomainError("Jacobi set index must be 1, 2 or 3");
    }
}

double kinetic_scale(Dimension d) {
    return d == Dimension::D1 ? 0.5 : 1.0;
}

double tilde_factor(double beta, Dimension d) {
    check_beta(beta);
    return 2.0 * kinetic_scale(d) * (1.0 + beta) / beta;
}

double prime_to_tilde(double e_prime, double beta, Dimension d) { return tilde_factor(beta, d) * e_prime; }
double tilde_to_prime(double e_tilde, double beta, Dimension d) { return e_tilde / tilde_factor(beta, d); }
cplx prime_to_tilde(cplx e_prime, double beta, Dimension d) { return tilde_factor(beta, d) * e_prime; }
cplx tilde_to_prime(cplx e_tilde, double beta, Dimension d) { return e_tilde / tilde_factor(beta, d); }

namespace {
constexpr double hbar_si = 1.054571817e-34;   // J s
}

double physical_energy_scale(double r0_m, double mu_bx_kg) {
    if (!(r0_m > 0.0) || !(mu_bx_kg > 0.0))
        throw DomainError("physical scales need positive range and mass");
    return hbar_si * hbar_si / (2.0 * mu_bx_kg * r0_m * r0_m);
}

double physical_time_scale(double r0_m, double mu_bx_kg) {
    return hbar_si / physical_energy_scale(r0_m, mu_bx_kg);
}

double width_from_energy(cplx e) {
    double g = -2.0 * e.imag();
    return g > 0.0 ? g : 0.0;
}

double lifetime_from_width(double gamma, double accuracy) {
    if (gamma < 0.0) throw DomainError("negative width");
    if (gamma <= accuracy) return std::numeric_limits<double>::infinity();
    return 1.0 / gamma;
}

} // namespace triores
