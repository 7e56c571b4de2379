#include "triores/eigensolver.hpp"

#include "lapack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace triores {

namespace {

Eigen::MatrixXd dgemm(char ta, char tb, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const int m = static_cast<int>(ta == 'N' ? a.rows() : a.cols());
    const int kk = static_cast<int>(ta == 'N' ? a.cols() : a.rows());
    const int n = static_cast<int>(tb == 'N' ? b.cols() : b.rows());
    Eigen::MatrixXd c(m, n);
    const double one = 1.0, zero = 0.0;
    const int lda = std::max<int>(1, static_cast<int>(a.rows()));
    const int ldb = std::max<int>(1, static_cast<int>(b.rows()));
    const int ldc = std::max(1, m);
    dgemm_(&ta, &tb, &m, &n, &kk, &one, a.data(), &lda, b.data(), &ldb, &zero,
           c.data(), &ldc);
    return c;
}

// X^T M X for complex M through four real gemms.
Eigen::MatrixXcd project(const Eigen::MatrixXcd& m, const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd mr = m.real(), mi = m.imag();
    const Eigen::MatrixXd cr = dgemm('T', 'N', x, dgemm('N', 'N', mr, x));
    const Eigen::MatrixXd ci = dgemm('T', 'N', x, dgemm('N', 'N', mi, x));
    Eigen::MatrixXcd c(cr.rows(), cr.cols());
    c.real() = cr;
    c.imag() = ci;
    return c;
}

Eigen::MatrixXcd back_transform(const Eigen::MatrixXd& x, const Eigen::MatrixXcd& w) {
    const Eigen::MatrixXd ar = dgemm('N', 'N', x, Eigen::MatrixXd(w.real()));
    const Eigen::MatrixXd ai = dgemm('N', 'N', x, Eigen::MatrixXd(w.imag()));
    Eigen::MatrixXcd a(ar.rows(), ar.cols());
    a.real() = ar;
    a.imag() = ai;
    return a;
}

std::vector<int> sorted_order(const std::vector<cplx>& w) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (w[a].real() != w[b].real()) return w[a].real() < w[b].real();
        return w[a].imag() < w[b].imag();
    });
    return idx;
}

void check_square(const Eigen::Index hr, const Eigen::Index hc, const Eigen::Index sr,
                  const Eigen::Index sc) {
    if (hr != hc || sr != sc || hr != sr || hr == 0)
        throw DomainError("eigensolver needs square matrices of equal size");
}

void check_residuals(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& s,
                     const EigenResult& r, double tol) {
    const Eigen::MatrixXcd ha = h * r.vectors;
    const Eigen::MatrixXcd sa = s * r.vectors;
    for (Eigen::Index j = 0; j < r.vectors.cols(); ++j) {
        const double scale = r.vectors.col(j).norm() * std::max(1.0, std::abs(r.values[j]));
        const double res = (ha.col(j) - r.values[j] * sa.col(j)).norm() / scale;
        if (!(res <= tol))
            throw SolverError("eigenpair residual " + std::to_string(res) +
                              " above tolerance");
    }
}

// A^T S A (no conjugation) must come out diagonal for states built through
// canonical orthogonalization of a symmetric problem.
void check_s_orthogonality(const Eigen::MatrixXcd& s, const Eigen::MatrixXcd& a,
                           double tol) {
    const Eigen::MatrixXcd g = a.transpose() * s * a;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (i == j) continue;
            const double scale = std::sqrt(std::abs(g(i, i)) * std::abs(g(j, j))) + 1e-30;
            if (!(std::abs(g(i, j)) <= tol * scale))
                throw SolverError("eigenvectors not overlap-orthogonal");
        }
    }
}

// Canonical columns are u_j / sqrt(sigma_j) with unit u_j, so the squared
// column norms recover 1/sigma over the retained spectrum.
double basis_condition(const Eigen::MatrixXd& x) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double nsq = x.col(j).squaredNorm();
        lo = std::min(lo, nsq);
        hi = std::max(hi, nsq);
    }
    return x.cols() > 0 ? hi / lo : 1.0;
}

} // namespace

Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& s, const EigenOptions& opt) {
    const int n = static_cast<int>(s.rows());
    check_square(s.rows(), s.cols(), s.rows(), s.cols());
    Eigen::MatrixXd u = s;
    std::vector<double> sigma(n);
    const int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, u.data(), n, sigma.data());
    if (info != 0) throw SolverError("dsyevd failed on overlap, info=" + std::to_string(info));
    const double sig_max = sigma[n - 1];
    if (!(sig_max > 0.0)) throw ConditioningError("overlap matrix has no positive spectrum");
    const double cut = opt.sigma_cut * sig_max;
    int first = 0;
    while (first < n && !(sigma[first] > cut)) ++first;
    const int kept = n - first;
    if (kept == 0) throw ConditioningError("all overlap eigenvalues below cutoff");
    if (first > opt.max_drop_fraction * n)
        throw ConditioningError("overlap too ill-conditioned: dropped " +
                                std::to_string(first) + " of " + std::to_string(n) +
                                " directions");
    Eigen::MatrixXd x(n, kept);
    for (int j = 0; j < kept; ++j)
        x.col(j) = u.col(first + j) / std::sqrt(sigma[first + j]);
    return x;
}

EigenResult solve_with_basis(const Eigen::MatrixXcd& h, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXcd& s, const EigenOptions& opt) {
    const int n = static_cast<int>(x.rows());
    const int k = static_cast<int>(x.cols());
    Eigen::MatrixXcd c = project(h, x);
    c = 0.5 * (c + c.transpose()).eval();

    std::vector<cplx> w(k);
    Eigen::MatrixXcd vr;
    const char jobvr = opt.want_vectors ? 'V' : 'N';
    if (opt.want_vectors) vr.resize(k, k);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', jobvr, k, c.data(), k,
                                   w.data(), nullptr, 1,
                                   opt.want_vectors ? vr.data() : nullptr,
                                   opt.want_vectors ? k : 1);
    if (info != 0) throw SolverError("zgeev failed, info=" + std::to_string(info));

    const auto idx = sorted_order(w);
    EigenResult r;
    r.n_kept = k;
    r.discarded = n - k;
    r.condition = basis_condition(x);
    r.values.resize(k);
    for (int j = 0; j < k; ++j) r.values[j] = w[idx[j]];
    if (opt.want_vectors) {
        Eigen::MatrixXcd ws(k, k);
        for (int j = 0; j < k; ++j) ws.col(j) = vr.col(idx[j]);
        r.vectors = back_transform(x, ws);
        check_residuals(h, s, r, opt.residual_tol);
        check_s_orthogonality(s, r.vectors, opt.orth_tol);
    }
    return r;
}

EigenResult solve_generalized(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& s,
                              const EigenOptions& opt) {
    check_square(h.rows(), h.cols(), s.rows(), s.cols());
    const int n = static_cast<int>(h.rows());
    const double s_imag = s.imag().cwiseAbs().maxCoeff();
    const double s_real = s.real().cwiseAbs().maxCoeff();
    if (s_imag <= 1e-13 * (s_real + 1.0)) {
        const Eigen::MatrixXd x = canonical_basis(s.real(), opt);
        return solve_with_basis(h, x, s, opt);
    }

    // Genuinely complex overlap: invert it with LU and diagonalize S^-1 H.
    Eigen::MatrixXcd a = s;
    Eigen::MatrixXcd m = h;
    std::vector<int> piv(n);
    const double anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', n, n, a.data(), n);
    int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, a.data(), n, piv.data());
    if (info != 0) throw ConditioningError("complex overlap is numerically singular");
    double rcond = 0.0;
    LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, a.data(), n, anorm, &rcond);
    if (rcond < 1e-14)
        throw ConditioningError("complex overlap condition estimate " +
                                std::to_string(rcond));
    info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, n, a.data(), n, piv.data(),
                          m.data(), n);
    if (info != 0) throw SolverError("zgetrs failed, info=" + std::to_string(info));

    std::vector<cplx> w(n);
    Eigen::MatrixXcd vr;
    const char jobvr = opt.want_vectors ? 'V' : 'N';
    if (opt.want_vectors) vr.resize(n, n);
    info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', jobvr, n, m.data(), n, w.data(),
                         nullptr, 1, opt.want_vectors ? vr.data() : nullptr,
                         opt.want_vectors ? n : 1);
    if (info != 0) throw SolverError("zgeev failed, info=" + std::to_string(info));

    const auto idx = sorted_order(w);
    EigenResult r;
    r.n_kept = n;
    r.condition = 1.0 / rcond;
    r.values.resize(n);
    for (int j = 0; j < n; ++j) r.values[j] = w[idx[j]];
    if (opt.want_vectors) {
        r.vectors.resize(n, n);
        for (int j = 0; j < n; ++j) r.vectors.col(j) = vr.col(idx[j]);
        check_residuals(h, s, r, opt.residual_tol);
    }
    return r;
}

RealEigenResult solve_real_generalized(const Eigen::MatrixXd& h, const Eigen::MatrixXd& s,
                                       const EigenOptions& opt) {
    check_square(h.rows(), h.cols(), s.rows(), s.cols());
    const Eigen::MatrixXd x = canonical_basis(s, opt);
    const int k = static_cast<int>(x.cols());
    Eigen::MatrixXd c = dgemm('T', 'N', x, dgemm('N', 'N', h, x));
    c = 0.5 * (c + c.transpose()).eval();
    std::vector<double> w(k);
    const char jobz = opt.want_vectors ? 'V' : 'N';
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'U', k, c.data(), k, w.data());
    if (info != 0) throw SolverError("dsyevd failed, info=" + std::to_string(info));
    RealEigenResult r;
    r.n_kept = k;
    r.discarded = static_cast<int>(h.rows()) - k;
    r.condition = basis_condition(x);
    r.values = std::move(w);
    if (opt.want_vectors) r.vectors = dgemm('N', 'N', x, c);
    return r;
}

} // namespace triores
