#pragma once

#include "triores/eigensolver.hpp"
#include "triores/gauss_basis.hpp"

#include <string>
#include <vector>

namespace triores {

// The BX pair in prime units obeys  [kappa (-lap) + v0 exp(-r^2)] psi = E psi
// with no mass parameter; kappa = kinetic_scale(d) is 1 in 3D and 1/2 in 1D
// (the two prime conventions differ in their energy quantum).  Its levels set
// the break-up thresholds of the three-body problem.  Sectors are partial
// waves in 3D and parity classes in 1D; both map onto a polynomial degree
// ell in {0, 1}.

int sector_ell(Sector s);
char sector_letter(Sector s);                 // 's' family letter or 'p'
Sector sector_from_ell(Dimension d, int ell);
std::string level_label(int n, Sector s);     // 1-based n: "1s", "2s", "1p", ...

struct TwoBodyElement {
    cplx overlap{}, kinetic{}, potential{};   // potential carries the unit-depth integral
};

// One matrix element triple of the rotated pair Hamiltonian pieces
//   exp(-2 i theta) (-lap)   and   exp(-exp(2 i theta) r^2)
// between normalized members.  Functions of unequal ell do not couple.
TwoBodyElement two_body_element(const BasisFunction& bra, const BasisFunction& ket,
                                Dimension d, double theta = 0.0);

struct TwoBodyMatrices {
    Eigen::MatrixXcd h, s;
};

TwoBodyMatrices two_body_matrix_elements(const std::vector<BasisFunction>& basis,
                                         double v0, Dimension d, double theta = 0.0);

// Full variational spectrum at theta = 0, ascending.
std::vector<double> solve_two_body(const GaussBasisSpec& spec, Sector sector, double v0,
                                   Dimension d);

std::vector<double> bound_levels(const GaussBasisSpec& spec, Sector sector, double v0,
                                 Dimension d);

struct Threshold {
    std::string label;
    double energy;
    Sector sector;
    int n;          // 1-based index within the sector
};

// All bound pair levels from both sectors, ascending in energy.
std::vector<Threshold> thresholds(double v0, Dimension d, const GaussBasisSpec& ell0,
                                  const GaussBasisSpec& ell1);

// Depth v0 < 0 placing level `level_index` (0-based within the sector)
// within `tol` of `target`.  Levels increase monotonically with v0, so
// bisection on an expanding bracket is exact.
double tune_depth(Dimension d, Sector sector, int level_index, double target,
                  const GaussBasisSpec& spec, double v0_lo = -400.0,
                  double v0_hi = -1e-3, double tol = 1e-8);

// Basis wide enough to converge the shallow pair levels well beyond the
// accuracy needed by the three-body thresholds.
GaussBasisSpec two_body_default_basis(Dimension d, Sector sector);

} // namespace triores
