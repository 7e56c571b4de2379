#include <doctest.h>

#include "triores/units.hpp"

#include <cmath>
#include <limits>

using namespace triores;

TEST_CASE("mass config fixes the BX reduced mass at one half") {
    for (double beta : {0.05, 0.3, 1.0, 4.7, 20.0}) {
        const MassConfig mc = mass_config(beta);
        CHECK(mc.beta == beta);
        CHECK(mc.m_x == doctest::Approx((1.0 + beta) / (2.0 * beta)).epsilon(1e-15));
        CHECK(mc.m_b == doctest::Approx((1.0 + beta) / 2.0).epsilon(1e-15));
        CHECK(mc.m_b / mc.m_x == doctest::Approx(beta).epsilon(1e-14));
        for (int k : {2, 3}) {
            CHECK(mc.mu_pair(k) == doctest::Approx(0.5).epsilon(1e-14));
            CHECK(mc.pair_coeff(k) == doctest::Approx(1.0).epsilon(1e-14));
        }
        CHECK(mc.mu_pair(1) == doctest::Approx(mc.m_b / 2.0).epsilon(1e-14));
        // X against the BB pair and B against the BX pair.
        CHECK(mc.mu_third(1) ==
              doctest::Approx((1.0 + beta) / (1.0 + 2.0 * beta)).epsilon(1e-13));
        const double mu3 = (1.0 + beta) * (1.0 + beta) / (2.0 * (1.0 + 2.0 * beta));
        CHECK(mc.mu_third(2) == doctest::Approx(mu3).epsilon(1e-13));
        CHECK(mc.mu_third(3) == doctest::Approx(mu3).epsilon(1e-13));
    }
}

TEST_CASE("spectator reduced mass against the pair in units of the boson mass") {
    const MassConfig mc = mass_config(20.0);
    CHECK(mc.mu_third(2) / mc.m_b == doctest::Approx(21.0 / 41.0).epsilon(1e-14));
}

TEST_CASE("beta domain") {
    CHECK_NOTHROW(check_beta(0.05));
    CHECK_NOTHROW(check_beta(20.0));
    CHECK_THROWS_AS(check_beta(0.04), DomainError);
    CHECK_THROWS_AS(check_beta(21.0), DomainError);
    CHECK_THROWS_AS(check_beta(-1.0), DomainError);
}

TEST_CASE("kinetic scale per dimension") {
    CHECK(kinetic_scale(Dimension::D3) == 1.0);
    CHECK(kinetic_scale(Dimension::D1) == 0.5);
}

TEST_CASE("tilde scaling") {
    const Dimension d3 = Dimension::D3;
    const Dimension d1 = Dimension::D1;
    CHECK(tilde_factor(1.0, d3) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(tilde_factor(20.0, d3) == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(tilde_factor(0.05, d3) == doctest::Approx(42.0).epsilon(1e-15));
    // The 1D prime unit is twice the 3D one, so the tilde factor halves.
    CHECK(tilde_factor(1.0, d1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(tilde_factor(20.0, d1) == doctest::Approx(1.05).epsilon(1e-15));

    CHECK(prime_to_tilde(-0.1, 1.0, d3) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(prime_to_tilde(-0.1, 20.0, d3) == doctest::Approx(-0.21).epsilon(1e-15));
    CHECK(tilde_to_prime(-0.1, 1.0, d3) == doctest::Approx(-0.025).epsilon(1e-15));
    CHECK(prime_to_tilde(-0.1, 1.0, d1) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(tilde_to_prime(-0.1, 1.0, d1) == doctest::Approx(-0.05).epsilon(1e-15));

    for (Dimension d : {d3, d1})
        for (double beta : {0.07, 1.0, 3.3, 18.0})
            for (double e : {-12.0, -0.1, 0.4})
                CHECK(tilde_to_prime(prime_to_tilde(e, beta, d), beta, d) ==
                      doctest::Approx(e).epsilon(1e-14));

    const cplx z(-1.0, -0.005);
    const cplx zt = prime_to_tilde(z, 2.0, d3);
    CHECK(zt.real() == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(zt.imag() == doctest::Approx(-0.015).epsilon(1e-15));
    const cplx back = tilde_to_prime(zt, 2.0, d3);
    CHECK(back.real() == doctest::Approx(z.real()).epsilon(1e-14));
    CHECK(back.imag() == doctest::Approx(z.imag()).epsilon(1e-14));
}

TEST_CASE("width and lifetime") {
    CHECK(width_from_energy(cplx(-1.0, -0.005)) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(width_from_energy(cplx(-1.0, 0.003)) == 0.0);

    CHECK(lifetime_from_width(0.01, 1e-6) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(std::isinf(lifetime_from_width(0.0, 1e-6)));
    // Width below the resolution of the eigenvalue itself.
    CHECK(std::isinf(lifetime_from_width(1e-9, 1e-6)));
}

TEST_CASE("physical scales") {
    const double hbar = 1.054571817e-34;
    const double r0 = 1e-9;
    const double mu = 1.66053906660e-27;
    const double e0 = physical_energy_scale(r0, mu);
    const double t0 = physical_time_scale(r0, mu);
    CHECK(e0 == doctest::Approx(hbar * hbar / (2.0 * mu * r0 * r0)).epsilon(1e-12));
    CHECK(e0 * t0 == doctest::Approx(hbar).epsilon(1e-12));
    // Quadratic in the range, inverse in the mass.
    CHECK(physical_energy_scale(2.0 * r0, mu) == doctest::Approx(e0 / 4.0).epsilon(1e-12));
    CHECK(physical_energy_scale(r0, 2.0 * mu) == doctest::Approx(e0 / 2.0).epsilon(1e-12));
}
