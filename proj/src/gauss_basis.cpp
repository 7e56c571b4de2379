#include "triores/gauss_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace triores {

namespace {

double double_factorial(int n) {  // (-1)!! = 1
    double r = 1.0;
    for (; n > 1; n -= 2) r *= n;
    return r;
}

} // namespace

std::vector<double> geometric_ranges(int n_max, double first, double last) {
    if (n_max < 1) throw DomainError("basis size must be at least 1");
    if (!(first > 0.0) || !(last > 0.0))
        throw DomainError("Gaussian ranges must be positive");
    std::vector<double> out(n_max);
    if (n_max == 1) {
        out[0] = first;
        return out;
    }
    if (first == last)
        throw DomainError("geometric range endpoints must differ");
    const double ratio = std::pow(last / first, 1.0 / (n_max - 1));
    for (int i = 0; i < n_max; ++i) out[i] = first * std::pow(ratio, i);
    out[n_max - 1] = last;  // kill accumulated rounding at the far end
    return out;
}

std::vector<BasisFunction> plain_functions(std::span<const double> ranges, int ell) {
    if (ell < 0) throw DomainError("negative polynomial degree");
    std::vector<BasisFunction> out;
    out.reserve(ranges.size());
    for (double nu : ranges) {
        BasisFunction f;
        f.ell = ell;
        f.flavor = Flavor::Plain;
        f.n_prim = 1;
        f.coeff[0] = 1.0;
        f.nu[0] = nu;
        out.push_back(f);
    }
    return out;
}

std::vector<BasisFunction> complex_double(std::span<const double> ranges, double omega,
                                          int ell) {
    if (!(omega > 0.0)) throw DomainError("complex-range omega must be positive");
    std::vector<BasisFunction> out;
    out.reserve(2 * ranges.size());
    for (double nu : ranges) {
        const cplx np = nu * cplx(1.0, omega);
        const cplx nm = nu * cplx(1.0, -omega);
        BasisFunction c;
        c.ell = ell;
        c.flavor = Flavor::Cos;
        c.n_prim = 2;
        c.coeff = {cplx(0.5, 0.0), cplx(0.5, 0.0)};
        c.nu = {np, nm};
        out.push_back(c);
        BasisFunction s;
        s.ell = ell;
        s.flavor = Flavor::Sin;
        s.n_prim = 2;
        s.coeff = {cplx(0.0, 0.5), cplx(0.0, -0.5)};
        s.nu = {np, nm};
        out.push_back(s);
    }
    return out;
}

cplx radial_moment(Dimension d, int power, cplx s) {
    if (power < 0) throw DomainError("negative moment power");
    if (!(s.real() > 0.0))
        throw AnalyticityError("Gaussian moment with non-positive real range");
    constexpr double sqrt_pi = 1.7724538509055160273;
    if (d == Dimension::D1) {
        if (power % 2 == 1) return 0.0;
        const int m = power / 2;
        return double_factorial(2 * m - 1) / std::pow(2.0, m) * sqrt_pi *
               std::pow(s, -(m + 0.5));
    }
    // 4 pi int r^(power+2) exp(-s r^2) dr
    if (power % 2 == 1)
        throw DomainError("odd radial moment in 3D");
    const int m = power / 2;
    constexpr double pi = std::numbers::pi;
    return double_factorial(2 * m + 1) / std::pow(2.0, m) * pi * sqrt_pi *
           std::pow(s, -(m + 1.5));
}

double self_overlap(const BasisFunction& f, Dimension d) {
    cplx acc = 0.0;
    for (int a = 0; a < f.n_prim; ++a)
        for (int b = 0; b < f.n_prim; ++b)
            acc += f.coeff[a] * f.coeff[b] *
                   radial_moment(d, 2 * f.ell, f.nu[a] + f.nu[b]);
    // Plain, cos and sin functions are real-valued, so this is real.
    if (std::abs(acc.imag()) > 1e-12 * std::abs(acc.real()))
        throw DomainError("self overlap unexpectedly complex");
    return acc.real();
}

void normalize(BasisFunction& f, Dimension d) {
    const double s = self_overlap(f, d) * f.norm * f.norm;
    if (!(s > 0.0)) throw DomainError("non-positive self overlap");
    f.norm /= std::sqrt(s);
}

std::vector<BasisFunction> build_functions(const GaussBasisSpec& spec, Dimension d) {
    if (spec.n_max < 2) throw DomainError("basis spec needs at least 2 functions");
    if (spec.ell != 0 && spec.ell != 1)
        throw DomainError("polynomial degree is limited to 0 or 1");
    const auto ranges = geometric_ranges(spec.n_max, spec.first, spec.last);
    auto fns = spec.omega ? complex_double(ranges, *spec.omega, spec.ell)
                          : plain_functions(ranges, spec.ell);
    for (auto& f : fns) normalize(f, d);
    return fns;
}

} // namespace triores
