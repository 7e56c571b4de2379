#include "triores/twobody.hpp"

#include "triores/units.hpp"

#include <algorithm>
#include <cmath>

namespace triores {

int sector_ell(Sector s) {
    return (s == Sector::SWave || s == Sector::Even) ? 0 : 1;
}

char sector_letter(Sector s) { return sector_ell(s) == 0 ? 's' : 'p'; }

Sector sector_from_ell(Dimension d, int ell) {
    if (ell != 0 && ell != 1) throw DomainError("pair sectors cover ell 0 and 1 only");
    if (d == Dimension::D3) return ell == 0 ? Sector::SWave : Sector::PWave;
    return ell == 0 ? Sector::Even : Sector::Odd;
}

std::string level_label(int n, Sector s) {
    return std::to_string(n) + sector_letter(s);
}

TwoBodyElement two_body_element(const BasisFunction& bra, const BasisFunction& ket,
                                Dimension d, double theta) {
    TwoBodyElement el;
    if (bra.ell != ket.ell) return el;
    const int l = bra.ell;
    const cplx rot_kin = std::exp(cplx(0.0, -2.0 * theta));
    const cplx rot_pot = std::exp(cplx(0.0, 2.0 * theta));
    const int dd = dim_value(d);
    cplx s = 0.0, t = 0.0, v = 0.0;
    for (int i = 0; i < bra.n_prim; ++i) {
        for (int j = 0; j < ket.n_prim; ++j) {
            const cplx cc = bra.coeff[i] * ket.coeff[j];
            const cplx sum = bra.nu[i] + ket.nu[j];
            const cplx ovl = radial_moment(d, 2 * l, sum);
            s += cc * ovl;
            t += cc * (2.0 * (2 * l + dd)) * bra.nu[i] * ket.nu[j] / sum * ovl;
            v += cc * radial_moment(d, 2 * l, sum + rot_pot);
        }
    }
    const double nn = bra.norm * ket.norm;
    el.overlap = nn * s;
    el.kinetic = nn * rot_kin * t;
    el.potential = nn * v;
    return el;
}

TwoBodyMatrices two_body_matrix_elements(const std::vector<BasisFunction>& basis,
                                         double v0, Dimension d, double theta) {
    const int n = static_cast<int>(basis.size());
    const double ks = kinetic_scale(d);
    TwoBodyMatrices m;
    m.h = Eigen::MatrixXcd::Zero(n, n);
    m.s = Eigen::MatrixXcd::Zero(n, n);
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a <= b; ++a) {
            const TwoBodyElement el = two_body_element(basis[a], basis[b], d, theta);
            m.s(a, b) = m.s(b, a) = el.overlap;
            m.h(a, b) = m.h(b, a) = ks * el.kinetic + v0 * el.potential;
        }
    }
    return m;
}

std::vector<double> solve_two_body(const GaussBasisSpec& spec, Sector sector, double v0,
                                   Dimension d) {
    GaussBasisSpec sp = spec;
    sp.ell = sector_ell(sector);
    const auto basis = build_functions(sp, d);
    const auto m = two_body_matrix_elements(basis, v0, d, 0.0);
    return solve_real_generalized(m.h.real(), m.s.real(), {}).values;
}

std::vector<double> bound_levels(const GaussBasisSpec& spec, Sector sector, double v0,
                                 Dimension d) {
    auto all = solve_two_body(spec, sector, v0, d);
    std::vector<double> out;
    for (double e : all)
        if (e < 0.0) out.push_back(e);
    return out;
}

std::vector<Threshold> thresholds(double v0, Dimension d, const GaussBasisSpec& ell0,
                                  const GaussBasisSpec& ell1) {
    std::vector<Threshold> out;
    for (int ell = 0; ell <= 1; ++ell) {
        const Sector sec = sector_from_ell(d, ell);
        const auto levels = bound_levels(ell == 0 ? ell0 : ell1, sec, v0, d);
        for (size_t i = 0; i < levels.size(); ++i)
            out.push_back({level_label(static_cast<int>(i) + 1, sec), levels[i], sec,
                           static_cast<int>(i) + 1});
    }
    std::sort(out.begin(), out.end(),
              [](const Threshold& a, const Threshold& b) { return a.energy < b.energy; });
    return out;
}

double tune_depth(Dimension d, Sector sector, int level_index, double target,
                  const GaussBasisSpec& spec, double v0_lo, double v0_hi, double tol) {
    if (level_index < 0 || level_index >= spec.size())
        throw DomainError("level index outside basis span");
    if (!(v0_lo < v0_hi) || !(v0_hi < 0.0))
        throw DomainError("depth bracket must satisfy v0_lo < v0_hi < 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

    const auto level = [&](double v0) {
        return solve_two_body(spec, sector, v0, d)[level_index];
    };

    double lo = v0_lo, hi = v0_hi;
    double flo = level(lo) - target;
    double fhi = level(hi) - target;
    for (int i = 0; i < 60 && flo > 0.0; ++i) {
        lo *= 2.0;
        if (lo < -1e6) throw NoRootError("no depth deep enough for the requested level");
        flo = level(lo) - target;
    }
    if (flo > 0.0 || fhi < 0.0)
        throw NoRootError("depth bracket does not contain the requested level energy");

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = level(mid) - target;
        if (std::abs(fm) <= tol) return mid;
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

GaussBasisSpec two_body_default_basis(Dimension d, Sector sector) {
    GaussBasisSpec sp;
    sp.n_max = 48;
    sp.first = 600.0;
    sp.last = d == Dimension::D3 ? 0.001 : 0.0005;
    sp.ell = sector_ell(sector);
    return sp;
}

} // namespace triores
