#pragma once

#include "triores/gauss_basis.hpp"
#include "triores/gauss_integrals.hpp"
#include "triores/jacobi.hpp"
#include "triores/units.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace triores {

// Basis members are products  phi(x) chi(X)  of one Gaussian in the pair
// coordinate and one in the spectator coordinate of a single BX Jacobi set
// (set 2 by default; set 3 gives the identical spectrum and is kept for
// cross checks).  Boson symmetry enters through the exchange operator in
// the matrix elements, not through a second explicit channel.

struct ChannelSpec {
    GaussBasisSpec pair;    // degree ell acts on x
    GaussBasisSpec spect;   // degree ell acts on X

    int size() const { return pair.size() * spect.size(); }
};

struct ThreeBodyMember {
    BasisFunction pair;
    BasisFunction spect;
};

struct ThreeBodySpace {
    Dimension dim = Dimension::D3;
    int set = 2;
    std::vector<ChannelSpec> channels;
    std::vector<ThreeBodyMember> members;

    int size() const { return static_cast<int>(members.size()); }
    std::string signature() const;   // stable content key for caching
};

ThreeBodySpace build_space(Dimension d, const std::vector<ChannelSpec>& channels,
                           int set = 2);

// Model spaces used throughout: one complex-ranged (0,0) channel in 3D, the
// two even-parity channels (0,0) and (1,1) in 1D.  n_per_coord <= 0 selects
// the production sizes (16 in 3D, 32 in 1D).
ThreeBodySpace default_space(Dimension d, int n_per_coord = 0, int set = 2);

enum class Kernel { Overlap, Kinetic, GaussianPair };

// Matrix element of one kernel between members of (possibly) different
// Jacobi sets.  `ket_from_bra` expresses the ket coordinates through the
// bra ones; the integral is carried out entirely in bra coordinates.
//   Overlap:       <bra | ket o T>
//   Kinetic:       <bra | e^{-2 i theta} (-cx lap_x - cX lap_X) | ket o T>
//   GaussianPair:  <bra | exp(-e^{2 i theta} (p x + q X)^2) | ket o T>
cplx rearranged_gauss_integral(Dimension d, const ThreeBodyMember& bra,
                               const ThreeBodyMember& ket,
                               const JacobiTransform& ket_from_bra, Kernel kernel,
                               double theta = 0.0, const LinForm& pair_form = {1.0, 0.0},
                               double cx = 1.0, double cX = 1.0);

struct AssembledProblem {
    Eigen::MatrixXcd h;   // complex symmetric
    Eigen::MatrixXd s;    // real symmetric, theta independent
    Dimension dim = Dimension::D3;
    double beta = 1.0;
    double v0 = 0.0;
    double theta = 0.0;
    std::string basis_signature;
};

// H and S of the rotated, boson-symmetrized problem:
//   H_ab = <Phi_a | H(theta) (1 + P23) | Phi_b>,  S_ab = <Phi_a | 1 + P23 | Phi_b>
// with H(theta) = e^{-2 i theta} T + v0 [exp(-e^{2 i theta} r_31^2) +
// exp(-e^{2 i theta} r_12^2)].
AssembledProblem assemble(const ThreeBodySpace& space, const MassConfig& mc, double v0,
                          double theta);

} // namespace triores
