#pragma once

#include "triores/types.hpp"

namespace triores {

// Everything internal runs in "prime" units: lengths in units of the BX
// Gaussian range, masses normalized so that the BX reduced mass is exactly
// 1/2.  The energy quantum differs per dimension: in 3D it is
// hbar^2/(2 mu_bx r0^2), so the BX relative kinetic operator is -lap with
// no prefactor; in 1D it is hbar^2/(mu_bx r0^2), which puts a 1/2 in front
// of every kinetic term.  kinetic_scale() carries that factor.
//
// "Tilde" units rescale energies by m_x r0^2 / hbar^2 instead, the scale
// used for the fixed-binding scans.  Relative to prime energies that is a
// factor 2(1+beta)/beta in 3D and (1+beta)/beta in 1D.
//
// beta = m_b / m_x is the only free mass parameter.

constexpr double beta_min = 1.0 / 20.0;
constexpr double beta_max = 20.0;

void check_beta(double beta);

struct MassConfig {
    double beta;
    double m_x;     // = (1+beta)/(2 beta)
    double m_b;     // = (1+beta)/2

    // Reduced mass of the pair left when particle k is the spectator.
    // k = 1 is the X particle (pair is BB), k = 2,3 are the two bosons
    // (pair is BX, reduced mass 1/2 by construction).
    double mu_pair(int k) const;

    // Reduced mass of spectator k against the center of mass of its pair.
    double mu_third(int k) const;

    // Kinetic coefficients 1/(2 mu) multiplying -lap_x and -lap_X when the
    // Jacobi set with spectator k is used.
    double pair_coeff(int k) const { return 1.0 / (2.0 * mu_pair(k)); }
    double spectator_coeff(int k) const { return 1.0 / (2.0 * mu_third(k)); }
};

MassConfig mass_config(double beta);

enum class ScalingKind { Prime, Tilde };

// Prefactor of every -lap term in the prime-unit Hamiltonian of dimension d
// (for the reduced-mass-1/2 pair coordinate; Jacobi coefficients scale along).
double kinetic_scale(Dimension d);

// E_tilde / E_prime = 2 * kinetic_scale(d) * (1+beta)/beta.
double tilde_factor(double beta, Dimension d);

double prime_to_tilde(double e_prime, double beta, Dimension d);
double tilde_to_prime(double e_tilde, double beta, Dimension d);
cplx prime_to_tilde(cplx e_prime, double beta, Dimension d);
cplx tilde_to_prime(cplx e_tilde, double beta, Dimension d);

// Physical units for a concrete system: a Gaussian range r0 in meters and a
// BX reduced mass in kilograms give the energy quantum E_char = hbar^2 /
// (2 mu r0^2) in joules and the matching time unit hbar / E_char in seconds.
// Multiply prime energies by the former, prime lifetimes by the latter.
double physical_energy_scale(double r0_m, double mu_bx_kg);
double physical_time_scale(double r0_m, double mu_bx_kg);

// Gamma = -2 Im E for a resonance eigenvalue, clamped at zero.
double width_from_energy(cplx e);

// tau = 1/Gamma (hbar = 1).  A width at or below the numerical accuracy of
// the eigenvalue is indistinguishable from zero, so the lifetime is
// reported as infinite.
double lifetime_from_width(double gamma, double accuracy);

} // namespace triores
