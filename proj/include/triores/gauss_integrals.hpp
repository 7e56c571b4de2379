#pragma once

#include "triores/types.hpp"

#include <array>

namespace triores {

// Closed-form Gaussian integrals over two relative coordinates (x, X).
// Every matrix element of the rotated three-body Hamiltonian reduces to
//
//   integral  P(x, X) exp(-[a x^2 + 2 b x.X + c X^2])  dmu(x) dmu(X)
//
// where P is a product of linear forms (absent in 3D where only l = L = 0
// functions appear, at most six factors in 1D) and the quadratic form
// collects basis ranges, rearrangement transforms and the rotated
// interaction range.  The integral over each Cartesian direction
// factorizes, so a single scalar weight covers both dimensions.

struct QuadForm {
    cplx a{}, b{}, c{};   // a x^2 + 2 b x.X + c X^2

    QuadForm& operator+=(const QuadForm& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        return *this;
    }
};

struct LinForm {
    cplx p{}, q{};   // p x + q X
};

struct GaussWeight {
    QuadForm form;
    cplx z1;              // one-direction integral: pi / (sqrt(c) sqrt(a - b^2/c))
    cplx ia, ib, ic;      // inverse of [[a, b], [b, c]]
};

// Validates that Re [[a,b],[b,c]] is positive definite (the analyticity
// condition of the rotated integrand) and precomputes the pieces above.
GaussWeight prepare_weight(const QuadForm& q);

// Wick pair contraction <(p1 x + q1 X)(p2 x + q2 X)> per direction.
inline cplx contraction(const GaussWeight& w, const LinForm& u, const LinForm& v) {
    return 0.5 * (u.p * (w.ia * v.p + w.ib * v.q) + u.q * (w.ib * v.p + w.ic * v.q));
}

// z1^d: the bare Gaussian integral in d dimensions.
cplx z_value(const GaussWeight& w, Dimension d);

// A scalar polynomial term: coeff times a product of up to six linear forms
// in the scalar variables (1D only).
struct Monomial {
    cplx coeff{1.0, 0.0};
    int nf = 0;
    std::array<LinForm, 6> f{};

    void push(const LinForm& lf) { f.at(nf++) = lf; }
};

// Gaussian expectation <prod_i f_i> by Wick pairing, times coeff.
cplx moment(const GaussWeight& w, const Monomial& m);

// 3D counterpart: <u . v> for vector-valued forms equals 3 contractions.
inline cplx dot_moment(const GaussWeight& w, const LinForm& u, const LinForm& v) {
    return 3.0 * contraction(w, u, v);
}

} // namespace triores
