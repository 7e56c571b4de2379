#pragma once

#include "triores/units.hpp"

namespace triores {

// Particle 1 is X, particles 2 and 3 are the identical bosons B.
// Jacobi set k uses spectator k and pair (i,j) with (i,j,k) cyclic:
//
//   x_k = r_j - r_i
//   X_k = r_k - (m_i r_i + m_j r_j) / (m_i + m_j)
//
// Sets 2 and 3 therefore carry the interacting BX pair as their first
// coordinate.  All transforms below are linear maps acting identically on
// every Cartesian component, so a single 2x2 matrix describes them in both
// 1D and 3D.

struct JacobiTransform {
    // (x', X')^T = m (x, X)^T, row major.
    double m[2][2]{{1.0, 0.0}, {0.0, 1.0}};

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    JacobiTransform compose(const JacobiTransform& inner) const;  // this after inner
    bool is_identity(double tol = 1e-14) const;
};

// Coordinates of set `to_set` expressed through those of set `from_set`.
JacobiTransform jacobi_transform(const MassConfig& mc, int from_set, int to_set);

// The boson exchange (2 <-> 3) written in the coordinates of the given set.
// An involution with determinant -1.
JacobiTransform exchange_transform(const MassConfig& mc, int set);

} // namespace triores
