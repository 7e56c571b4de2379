#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace triores {

using cplx = std::complex<double>;

enum class Dimension { D1 = 1, D3 = 3 };

inline int dim_value(Dimension d) { return static_cast<int>(d); }

// Two-body model space sectors.  In 3D these are partial waves (S, P);
// in 1D they are parity classes (even, odd).
enum class Sector { SWave, PWave, Even, Odd };

inline bool sector_matches(Sector s, Dimension d) {
    if (d == Dimension::D3) return s == Sector::SWave || s == Sector::PWave;
    return s == Sector::Even || s == Sector::Odd;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the supported domain (mass ratio, angle, basis sizes...).
struct DomainError : Error {
    using Error::Error;
};

// A closed-form Gaussian integral lost convergence (real part of the
// quadratic form failed positive definiteness).
struct AnalyticityError : Error {
    using Error::Error;
};

// Assembled matrices violate a structural guarantee (symmetry, realness
// of the overlap).
struct AssemblyError : Error {
    using Error::Error;
};

// Overlap matrix too ill-conditioned to orthogonalize reliably.
struct ConditioningError : Error {
    using Error::Error;
};

// LAPACK (or the fallback dense solver) failed to converge.
struct SolverError : Error {
    using Error::Error;
};

// Root bracketing / refinement failed (potential depth tuning).
struct NoRootError : Error {
    using Error::Error;
};

} // namespace triores
