#pragma once

#include "triores/types.hpp"

#include <Eigen/Core>

#include <vector>

namespace triores {

struct EigenOptions {
    // Overlap eigenvalues below sigma_cut * max are discarded (canonical
    // orthogonalization).  Geometric Gaussian bases are intentionally
    // redundant, so large drop fractions are normal (the 1D production
    // basis sheds about 70%); the ceiling only catches a basis that has
    // collapsed outright.
    double sigma_cut = 1e-12;
    double max_drop_fraction = 0.85;
    bool want_vectors = false;
    double residual_tol = 1e-8;
    double orth_tol = 1e-8;
};

struct EigenResult {
    std::vector<cplx> values;    // sorted by (Re, Im)
    Eigen::MatrixXcd vectors;    // column j belongs to values[j]; empty unless requested
    int n_kept = 0;              // orthogonal directions retained
    int discarded = 0;           // directions dropped from the overlap
    double condition = 1.0;      // spread of the retained overlap spectrum
};

struct RealEigenResult {
    std::vector<double> values;  // ascending
    Eigen::MatrixXd vectors;
    int n_kept = 0;
    int discarded = 0;
    double condition = 1.0;
};

// Generalized eigenproblem H a = E S a with complex symmetric H.  When S is
// real (up to roundoff) it is orthogonalized canonically and the projected
// problem goes to a dense nonsymmetric complex solver; a genuinely complex
// S falls back to LU inversion of S first.  Eigenvectors, when requested,
// are returned in the original basis and checked against the residual
// tolerance.
EigenResult solve_generalized(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& S,
                              const EigenOptions& opt = {});

// Same, for real symmetric H (two-body problems).
RealEigenResult solve_real_generalized(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S,
                                       const EigenOptions& opt = {});

// Canonical orthogonalization factor X (n x k) with X^T S X = I, for reuse
// across several Hamiltonians sharing one overlap matrix.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& S, const EigenOptions& opt = {});

// Solve with a precomputed canonical factor.
EigenResult solve_with_basis(const Eigen::MatrixXcd& H, const Eigen::MatrixXd& X,
                             const Eigen::MatrixXcd& S, const EigenOptions& opt = {});

} // namespace triores
