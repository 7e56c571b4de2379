#include <doctest.h>

#include "oracles.hpp"
#include "triores/eigensolver.hpp"
#include "triores/threebody.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace triores;

namespace {

BasisFunction random_basis_function(std::mt19937& rng, Dimension d, int ell,
                                    bool allow_complex) {
    std::uniform_real_distribution<double> lnu(std::log(0.05), std::log(5.0));
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const double r[] = {std::exp(lnu(rng))};
    BasisFunction f;
    if (allow_complex && pick(rng) < 0.35) {
        const auto pair = complex_double(r, 0.4 + 0.6 * pick(rng), ell);
        f = pair[pick(rng) < 0.5 ? 0 : 1];
    } else {
        f = plain_functions(r, ell)[0];
    }
    normalize(f, d);
    return f;
}

ThreeBodyMember random_member(std::mt19937& rng, Dimension d, int ell,
                              bool allow_complex) {
    return {random_basis_function(rng, d, ell, allow_complex),
            random_basis_function(rng, d, ell, allow_complex)};
}

JacobiTransform random_transform(std::mt19937& rng, const MassConfig& mc) {
    switch (rng() % 4) {
    case 0: return {};
    case 1: return exchange_transform(mc, 2);
    case 2: return jacobi_transform(mc, 2, 3);
    default: return jacobi_transform(mc, 2, 3).compose(exchange_transform(mc, 2));
    }
}

std::vector<cplx> assembled_spectrum(const ThreeBodySpace& space, double beta, double v0,
                                     double theta) {
    const AssembledProblem ap = assemble(space, mass_config(beta), v0, theta);
    return solve_generalized(ap.h, ap.s.cast<cplx>()).values;
}

} // namespace

TEST_CASE("rearranged integrals against plane quadrature") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    std::uniform_real_distribution<double> lb(std::log(0.2), std::log(5.0));
    std::uniform_real_distribution<double> cdist(0.3, 2.0);
    std::uniform_real_distribution<double> fdist(-1.2, 1.2);

    for (Dimension d : {Dimension::D1, Dimension::D3}) {
        for (Kernel kernel : {Kernel::Overlap, Kernel::Kinetic, Kernel::GaussianPair}) {
            for (int trial = 0; trial < 8; ++trial) {
                const MassConfig mc = mass_config(std::exp(lb(rng)));
                const int ell = d == Dimension::D3 ? 0 : trial % 2;
                const ThreeBodyMember bra = random_member(rng, d, ell, true);
                const ThreeBodyMember ket = random_member(rng, d, ell, true);
                const JacobiTransform t = random_transform(rng, mc);
                const double theta = trial % 3 == 0 ? 0.0 : 0.12;
                const double cx = cdist(rng), cX = cdist(rng);
                LinForm form{1.0, 0.0};
                if (kernel == Kernel::GaussianPair && pick(rng) < 0.6)
                    form = LinForm{fdist(rng), fdist(rng)};

                const cplx lib = rearranged_gauss_integral(d, bra, ket, t, kernel, theta,
                                                           form, cx, cX);
                const cplx ref = oracle::rearranged_quadrature(d, bra, ket, t, kernel,
                                                               theta, form, cx, cX);
                const double scale = std::max({std::abs(lib), std::abs(ref), 1e-10});
                CHECK(std::abs(lib - ref) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("model space construction") {
    const ThreeBodySpace s3 = default_space(Dimension::D3);
    CHECK(s3.size() == 1024);
    CHECK(s3.channels.size() == 1);
    CHECK(s3.set == 2);

    const ThreeBodySpace s1 = default_space(Dimension::D1);
    CHECK(s1.size() == 2048);
    CHECK(s1.channels.size() == 2);

    const ThreeBodySpace small = default_space(Dimension::D3, 3);
    CHECK(small.size() == 36);   // complex doubling: (2*3)^2
    const ThreeBodySpace small1 = default_space(Dimension::D1, 3, 3);
    CHECK(small1.size() == 18);  // two channels of 3*3
    CHECK(small1.set == 3);

    CHECK(small.signature() != small1.signature());
    CHECK(default_space(Dimension::D3, 3).signature() == small.signature());

    CHECK_THROWS_AS(build_space(Dimension::D3, {}, 2), DomainError);
    CHECK_THROWS_AS(build_space(Dimension::D3, small.channels, 1), DomainError);
    ChannelSpec bad;
    bad.pair.ell = 1;
    bad.spect.ell = 0;
    CHECK_THROWS_AS(build_space(Dimension::D1, {bad}, 2), DomainError);
    bad.pair.ell = 1;
    bad.spect.ell = 1;
    CHECK_THROWS_AS(build_space(Dimension::D3, {bad}, 2), DomainError);
}

TEST_CASE("assembled matrices match explicit kernel sums") {
    ChannelSpec even;
    even.pair = {3, 8.0, 0.05, 0, {}};
    even.spect = {3, 6.0, 0.08, 0, {}};
    ChannelSpec odd = even;
    odd.pair.ell = 1;
    odd.spect.ell = 1;
    const ThreeBodySpace space = build_space(Dimension::D1, {even, odd}, 2);
    const MassConfig mc = mass_config(2.5);
    const double v0 = -5.44, theta = 0.1;

    const AssembledProblem ap = assemble(space, mc, v0, theta);
    CHECK(ap.dim == Dimension::D1);
    CHECK(ap.beta == 2.5);
    CHECK(ap.v0 == v0);
    CHECK(ap.theta == theta);
    CHECK(ap.basis_signature == space.signature());

    const JacobiTransform exch = exchange_transform(mc, 2);
    const JacobiTransform to3 = jacobi_transform(mc, 2, 3);
    const LinForm r31{1.0, 0.0};
    const LinForm r12{to3.m[0][0], to3.m[0][1]};
    const double ks = kinetic_scale(Dimension::D1);
    const double cx = ks * mc.pair_coeff(2), cX = ks * mc.spectator_coeff(2);

    const int n = space.size();
    double scale = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) scale = std::max(scale, std::abs(ap.h(a, b)));

    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            cplx hv = 0.0, sv = 0.0;
            for (const JacobiTransform* t : {static_cast<const JacobiTransform*>(nullptr),
                                             &exch}) {
                const JacobiTransform tr = t ? *t : JacobiTransform{};
                const auto& bra = space.members[a];
                const auto& ket = space.members[b];
                sv += rearranged_gauss_integral(Dimension::D1, bra, ket, tr,
                                                Kernel::Overlap);
                hv += rearranged_gauss_integral(Dimension::D1, bra, ket, tr,
                                                Kernel::Kinetic, theta, {1.0, 0.0}, cx,
                                                cX);
                hv += v0 * rearranged_gauss_integral(Dimension::D1, bra, ket, tr,
                                                     Kernel::GaussianPair, theta, r31);
                hv += v0 * rearranged_gauss_integral(Dimension::D1, bra, ket, tr,
                                                     Kernel::GaussianPair, theta, r12);
            }
            CHECK(std::abs(ap.h(a, b) - hv) <= 1e-12 * scale);
            CHECK(std::abs(ap.s(a, b) - sv.real()) <= 1e-12);
            CHECK(std::abs(sv.imag()) <= 1e-12);
        }
    }

    // Exact symmetry by construction, and unit direct self overlap.
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            CHECK(ap.h(a, b) == ap.h(b, a));
            CHECK(ap.s(a, b) == ap.s(b, a));
        }
        const cplx ex = rearranged_gauss_integral(Dimension::D1, space.members[a],
                                                  space.members[a], exch,
                                                  Kernel::Overlap);
        CHECK(ap.s(a, a) == doctest::Approx(1.0 + ex.real()).epsilon(1e-10));
    }
}

TEST_CASE("rotation angle domain") {
    const ThreeBodySpace space = default_space(Dimension::D1, 2);
    const MassConfig mc = mass_config(1.0);
    CHECK_THROWS_AS(assemble(space, mc, -5.44, 0.8), DomainError);
    CHECK_THROWS_AS(assemble(space, mc, -5.44, -0.1), DomainError);
    CHECK_NOTHROW(assemble(space, mc, -5.44, 0.0));
}

TEST_CASE("overlap does not depend on the rotation angle") {
    const ThreeBodySpace space = default_space(Dimension::D3, 2);
    const MassConfig mc = mass_config(1.3);
    const AssembledProblem a = assemble(space, mc, -19.77, 0.0);
    const AssembledProblem b = assemble(space, mc, -19.77, 0.15);
    CHECK((a.s - b.s).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((a.h - b.h).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("odd-odd channel deepens the 1d spectrum") {
    ChannelSpec even;
    even.pair = {6, 80.0, 0.05, 0, {}};
    even.spect = {6, 40.0, 0.04, 0, {}};
    ChannelSpec odd = even;
    odd.pair.ell = 1;
    odd.spect.ell = 1;

    const ThreeBodySpace both = build_space(Dimension::D1, {even, odd}, 2);
    const ThreeBodySpace one = build_space(Dimension::D1, {even}, 2);
    const double e_both = assembled_spectrum(both, 1.0, -5.44, 0.0)[0].real();
    const double e_one = assembled_spectrum(one, 1.0, -5.44, 0.0)[0].real();
    CHECK(e_both <= e_one + 1e-10);
    CHECK(e_one - e_both > 1e-6);
}

TEST_CASE("the two BX jacobi sets give one spectrum") {
    for (Dimension d : {Dimension::D1, Dimension::D3}) {
        const ThreeBodySpace s2 = default_space(d, 3, 2);
        const ThreeBodySpace s3 = default_space(d, 3, 3);
        const double v0 = d == Dimension::D3 ? -19.77 : -5.44;
        const auto e2 = assembled_spectrum(s2, 2.0, v0, 0.12);
        const auto e3 = assembled_spectrum(s3, 2.0, v0, 0.12);
        REQUIRE(e2.size() == e3.size());
        double scale = 0.0;
        for (cplx e : e2) scale = std::max(scale, std::abs(e));
        for (size_t i = 0; i < e2.size(); ++i)
            CHECK(std::abs(e2[i] - e3[i]) <= 1e-10 * scale);
    }
}
