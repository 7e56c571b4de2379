#include <doctest.h>

#include "triores/csm.hpp"

#include <cmath>
#include <cstring>

using namespace triores;

namespace {

std::vector<Threshold> fake_thresholds() {
    return {{"1s", -12.0, Sector::SWave, 1}, {"2s", -0.1, Sector::SWave, 2}};
}

const std::vector<double> angles{4.0, 7.0, 10.0};

cplx on_ray(double anchor, double r, double theta_deg) {
    return anchor + r * std::exp(cplx(0.0, -2.0 * deg2rad(theta_deg)));
}

// Bound state, one resonance, and rotated continuum points off each anchor.
std::vector<std::vector<cplx>> synthetic_spectra() {
    std::vector<std::vector<cplx>> sp;
    for (size_t i = 0; i < angles.size(); ++i) {
        const double th = angles[i];
        std::vector<cplx> s;
        s.push_back(cplx(-13.5 + 1e-9 * i, 1e-12));
        s.push_back(cplx(-1.0 + 1e-6 * i, -0.005 - 5e-7 * i));
        for (double anchor : {-12.0, -0.1, 0.0})
            for (double r : {0.3, 0.9}) s.push_back(on_ray(anchor, r, th));
        sp.push_back(s);
    }
    return sp;
}

} // namespace

TEST_CASE("classification of a synthetic spectrum") {
    CsmOptions opt;
    const CsmAnalysis an = classify_spectra(synthetic_spectra(), angles,
                                            fake_thresholds(), opt);
    CHECK(an.n_continuum >= 6);
    REQUIRE(an.states.size() == 2);

    const CsmState& b = an.states[0];
    CHECK(b.kind == StateKind::Bound);
    CHECK(b.energy.real() == doctest::Approx(-13.5).epsilon(1e-8));
    CHECK(b.energy.imag() == 0.0);
    CHECK(b.gamma == 0.0);
    CHECK(std::isinf(b.tau));
    CHECK(b.family == "1s");
    CHECK(b.members.size() == angles.size());

    const CsmState& r = an.states[1];
    CHECK(r.kind == StateKind::Resonance);
    CHECK(r.family == "2s");
    CHECK(r.energy.real() == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(r.gamma == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(r.tau == doctest::Approx(100.0).epsilon(1e-3));
    CHECK(r.accuracy < 1e-5);
    CHECK(r.accuracy > 0.0);

    const auto fam = family_states(an, "2s");
    REQUIRE(fam.size() == 1);
    CHECK(fam[0].energy.real() == doctest::Approx(-1.0).epsilon(1e-5));
    const auto deep = deepest_state(an, "2s");
    REQUIRE(deep.has_value());
    CHECK(deep->energy.real() == fam[0].energy.real());
    CHECK(!deepest_state(an, "9s").has_value());
}

TEST_CASE("two stable partners inside the tolerance stay unidentified") {
    auto sp = synthetic_spectra();
    for (size_t i = 0; i < sp.size(); ++i)
        sp[i].push_back(cplx(-1.0001 + 1e-6 * i, -0.005));
    CsmOptions opt;
    const CsmAnalysis an = classify_spectra(sp, angles, fake_thresholds(), opt);
    CHECK(family_states(an, "2s").empty());
    bool unidentified_near = false;
    for (const auto& s : an.states)
        if (s.kind == StateKind::Unidentified && std::abs(s.energy.real() + 1.0) < 0.01)
            unidentified_near = true;
    CHECK(unidentified_near);
}

TEST_CASE("stable eigenvalue in the upper half plane is not a state") {
    auto sp = synthetic_spectra();
    for (auto& s : sp) s.push_back(cplx(-2.0, 0.01));
    const CsmAnalysis an = classify_spectra(sp, angles, fake_thresholds(), CsmOptions{});
    bool found = false;
    for (const auto& s : an.states)
        if (std::abs(s.energy.real() + 2.0) < 1e-6) {
            found = true;
            CHECK(s.kind == StateKind::Unidentified);
        }
    CHECK(found);
}

TEST_CASE("roundoff-positive imaginary part clamps to the real axis") {
    auto sp = synthetic_spectra();
    for (auto& s : sp) s.push_back(cplx(-0.5, 1e-8));
    const CsmAnalysis an = classify_spectra(sp, angles, fake_thresholds(), CsmOptions{});
    bool found = false;
    for (const auto& s : an.states)
        if (std::abs(s.energy.real() + 0.5) < 1e-6) {
            found = true;
            CHECK(s.kind == StateKind::Resonance);
            CHECK(s.energy.imag() == 0.0);
            CHECK(s.gamma == 0.0);
            CHECK(std::isinf(s.tau));
        }
    CHECK(found);
}

TEST_CASE("eigenvalues beyond the energy window are ignored") {
    auto sp = synthetic_spectra();
    for (auto& s : sp) s.push_back(cplx(2.0, -0.005));
    const CsmAnalysis an = classify_spectra(sp, angles, fake_thresholds(), CsmOptions{});
    for (const auto& s : an.states) CHECK(s.energy.real() < 1.0);
}

TEST_CASE("ray slopes recover the rotation angle") {
    const double th = 10.0;
    std::vector<cplx> sp;
    for (double anchor : {-12.0, -0.1})
        for (double r : {0.05, 0.2, 0.5, 0.9, 1.4}) sp.push_back(on_ray(anchor, r, th));
    const auto slopes = continuum_ray_slopes(sp, th, fake_thresholds());
    REQUIRE(slopes.size() == 2);
    for (const auto& rs : slopes) {
        CHECK(rs.count >= 4);
        CHECK(std::abs(rs.slope_deg + 2.0 * th) <= 0.5);
    }
}

TEST_CASE("classifier input validation") {
    CHECK_THROWS_AS(classify_spectra({}, {}, fake_thresholds(), CsmOptions{}),
                    DomainError);
    CHECK_THROWS_AS(
        classify_spectra({{cplx(-1.0, 0.0)}}, {4.0, 7.0}, fake_thresholds(),
                         CsmOptions{}),
        DomainError);
}

TEST_CASE("full point analysis on a small 3d basis") {
    const ThreeBodySpace space = default_space(Dimension::D3, 6);
    CsmOptions opt;
    const PointResult pr = analyze_point(space, 1.0, -19.77, opt);
    CHECK(pr.beta == 1.0);
    CHECK(pr.v0 == -19.77);
    CHECK(pr.spectra.empty());
    REQUIRE(pr.analysis.thresholds.size() >= 2);
    CHECK(pr.analysis.thresholds[0].label == "1s");
    // The model space carries l = L = 0, so only s-wave pair levels count.
    for (const auto& t : pr.analysis.thresholds) CHECK(t.sector == Sector::SWave);

    int bound = 0;
    for (const auto& s : pr.analysis.states)
        if (s.kind == StateKind::Bound) ++bound;
    CHECK(bound >= 1);

    CsmOptions keep = opt;
    keep.keep_spectra = true;
    const PointResult pr2 = analyze_point(space, 1.0, -19.77, keep);
    REQUIRE(pr2.spectra.size() == opt.thetas_deg.size());
    for (const auto& s : pr2.spectra) CHECK(!s.empty());
}

TEST_CASE("pair thresholds do not move with the mass ratio") {
    const ThreeBodySpace space = default_space(Dimension::D3, 4);
    const PointResult a = analyze_point(space, 0.3, -19.77, CsmOptions{});
    const PointResult b = analyze_point(space, 7.0, -19.77, CsmOptions{});
    REQUIRE(a.analysis.thresholds.size() == b.analysis.thresholds.size());
    for (size_t i = 0; i < a.analysis.thresholds.size(); ++i) {
        const double ea = a.analysis.thresholds[i].energy;
        const double eb = b.analysis.thresholds[i].energy;
        CHECK(std::memcmp(&ea, &eb, sizeof(double)) == 0);
    }
}

TEST_CASE("bound states persist when the basis grows") {
    CsmOptions opt;
    const PointResult small = analyze_point(default_space(Dimension::D3, 4), 5.0,
                                            -19.77, opt);
    const PointResult big = analyze_point(default_space(Dimension::D3, 6), 5.0,
                                          -19.77, opt);
    int nb_small = 0, nb_big = 0;
    for (const auto& s : small.analysis.states)
        if (s.kind == StateKind::Bound) ++nb_small;
    for (const auto& s : big.analysis.states)
        if (s.kind == StateKind::Bound) ++nb_big;
    CHECK(nb_big >= nb_small);
}

TEST_CASE("heavier bosons bind more") {
    CsmOptions opt;
    const ThreeBodySpace space = default_space(Dimension::D3, 6);
    const auto count = [&](double beta) {
        const PointResult pr = analyze_point(space, beta, -19.77, opt);
        int n = 0;
        for (const auto& s : pr.analysis.states)
            if (s.kind == StateKind::Bound || s.kind == StateKind::Resonance) ++n;
        return n;
    };
    CHECK(count(15.0) >= count(0.3));
}

TEST_CASE("reduced-basis variation widens accuracy") {
    const ThreeBodySpace space = default_space(Dimension::D3, 6);
    CsmOptions plain;
    CsmOptions varied;
    varied.basis_variation = true;
    const PointResult a = analyze_point(space, 1.0, -19.77, plain);
    const PointResult b = analyze_point(space, 1.0, -19.77, varied);
    REQUIRE(!a.analysis.states.empty());
    REQUIRE(a.analysis.states.size() == b.analysis.states.size());
    bool any_discrete = false;
    for (size_t i = 0; i < a.analysis.states.size(); ++i) {
        const auto& sa = a.analysis.states[i];
        const auto& sb = b.analysis.states[i];
        if (sa.kind != StateKind::Bound && sa.kind != StateKind::Resonance) continue;
        any_discrete = true;
        CHECK(sb.accuracy >= sa.accuracy);
    }
    CHECK(any_discrete);
}

TEST_CASE("analysis options validation") {
    const ThreeBodySpace space = default_space(Dimension::D3, 2);
    CsmOptions opt;
    opt.thetas_deg = {4.0};
    CHECK_THROWS_AS(analyze_point(space, 1.0, -19.77, opt), DomainError);
    opt.thetas_deg = {4.0, 50.0};
    CHECK_THROWS_AS(analyze_point(space, 1.0, -19.77, opt), DomainError);
}
