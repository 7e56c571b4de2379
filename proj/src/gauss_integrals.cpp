#include "triores/gauss_integrals.hpp"

#include <cmath>
#include <numbers>

namespace triores {

GaussWeight prepare_weight(const QuadForm& q) {
    // Positive definiteness of the real part guarantees absolute convergence
    // and keeps every square root on the principal branch.
    const double ra = q.a.real(), rb = q.b.real(), rc = q.c.real();
    if (!(ra > 0.0) || !(rc > 0.0) || !(ra * rc - rb * rb > 0.0))
        throw AnalyticityError("rotated Gaussian form lost positive definiteness");
    GaussWeight w;
    w.form = q;
    const cplx schur = q.a - q.b * q.b / q.c;
    const cplx det = q.c * schur;
    w.z1 = std::numbers::pi / (std::sqrt(q.c) * std::sqrt(schur));
    w.ia = q.c / det;
    w.ib = -q.b / det;
    w.ic = q.a / det;
    return w;
}

cplx z_value(const GaussWeight& w, Dimension d) {
    return d == Dimension::D1 ? w.z1 : w.z1 * w.z1 * w.z1;
}

namespace {

cplx wick(const GaussWeight& w, const LinForm* f, int n) {
    if (n == 0) return 1.0;
    if (n % 2 != 0) return 0.0;
    cplx acc = 0.0;
    LinForm rest[6];
    for (int j = 1; j < n; ++j) {
        int m = 0;
        for (int i = 1; i < n; ++i)
            if (i != j) rest[m++] = f[i];
        acc += contraction(w, f[0], f[j]) * wick(w, rest, m);
    }
    return acc;
}

} // namespace

cplx moment(const GaussWeight& w, const Monomial& m) {
    return m.coeff * wick(w, m.f.data(), m.nf);
}

} // namespace triores
