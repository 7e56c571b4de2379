#pragma once

#include "triores/types.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace triores {

// One radial (3D) or line (1D) basis function
//
//   f(r) = norm * sum_a coeff[a] * r^ell * exp(-nu[a] r^2)
//
// Plain functions have a single primitive with real range.  The
// complex-ranged pairs produced by complex_double() represent
// cos(omega nu r^2) exp(-nu r^2) and sin(omega nu r^2) exp(-nu r^2); both
// are real-valued functions written as two conjugate complex primitives,
// which keeps every overlap matrix real.
enum class Flavor { Plain, Cos, Sin };

struct BasisFunction {
    int ell = 0;
    Flavor flavor = Flavor::Plain;
    int n_prim = 1;
    std::array<cplx, 2> coeff{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    std::array<cplx, 2> nu{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    double norm = 1.0;
};

// Geometric progression from `first` to `last` inclusive, n_max entries.
std::vector<double> geometric_ranges(int n_max, double first, double last);

std::vector<BasisFunction> plain_functions(std::span<const double> ranges, int ell);

// Doubled basis: for every range nu, a cos- and a sin-type function with
// complex ranges nu (1 +- i omega), interleaved [cos1, sin1, cos2, ...].
std::vector<BasisFunction> complex_double(std::span<const double> ranges, double omega,
                                          int ell = 0);

// Integral of r^power exp(-s r^2) over the measure of the given dimension:
// the full line in 1D, 4 pi r^2 dr on [0,inf) in 3D (angular factors are
// kept out of the basis by convention).  Odd powers integrate to zero in
// 1D and are rejected in 3D.  Requires Re(s) > 0.
cplx radial_moment(Dimension d, int power, cplx s);

// c-product self overlap (no conjugation), excluding the norm factor.
double self_overlap(const BasisFunction& f, Dimension d);

// Sets f.norm so that the c-product self overlap is exactly 1.
void normalize(BasisFunction& f, Dimension d);

struct GaussBasisSpec {
    int n_max = 16;
    double first = 1.0;
    double last = 0.01;
    int ell = 0;
    std::optional<double> omega;   // complex-range doubling when set

    int size() const { return omega ? 2 * n_max : n_max; }
};

// ranges -> (optional doubling) -> normalization.
std::vector<BasisFunction> build_functions(const GaussBasisSpec& spec, Dimension d);

} // namespace triores
