#include "triores/jacobi.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace triores {

namespace {

void check_set(int k) {
    if (k < 1 || k > 3) throw DomainError("Jacobi set index must be 1, 2 or 3");
}

// Rows: x_k, X_k, R_cm as linear combinations of (r_1, r_2, r_3).
Eigen::Matrix3d full_map(const MassConfig& mc, int k) {
    const double mass[4] = {0.0, mc.m_x, mc.m_b, mc.m_b};
    const int i = k % 3 + 1;
    const int j = i % 3 + 1;
    Eigen::Matrix3d f = Eigen::Matrix3d::Zero();
    f(0, j - 1) = 1.0;
    f(0, i - 1) = -1.0;
    const double mpair = mass[i] + mass[j];
    f(1, k - 1) = 1.0;
    f(1, i - 1) = -mass[i] / mpair;
    f(1, j - 1) = -mass[j] / mpair;
    const double mtot = mass[1] + mass[2] + mass[3];
    for (int p = 0; p < 3; ++p) f(2, p) = mass[p + 1] / mtot;
    return f;
}

JacobiTransform top_left(const Eigen::Matrix3d& full) {
    // Relative coordinates are translation invariant, so the center of mass
    // column must vanish.
    if (std::abs(full(0, 2)) > 1e-12 || std::abs(full(1, 2)) > 1e-12)
        throw DomainError("Jacobi transform mixes in the center of mass");
    JacobiTransform t;
    t.m[0][0] = full(0, 0);
    t.m[0][1] = full(0, 1);
    t.m[1][0] = full(1, 0);
    t.m[1][1] = full(1, 1);
    return t;
}

} // namespace

JacobiTransform JacobiTransform::compose(const JacobiTransform& inner) const {
    JacobiTransform r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            r.m[a][b] = m[a][0] * inner.m[0][b] + m[a][1] * inner.m[1][b];
    return r;
}

bool JacobiTransform::is_identity(double tol) const {
    return std::abs(m[0][0] - 1.0) < tol && std::abs(m[1][1] - 1.0) < tol &&
           std::abs(m[0][1]) < tol && std::abs(m[1][0]) < tol;
}

JacobiTransform jacobi_transform(const MassConfig& mc, int from_set, int to_set) {
    check_set(from_set);
    check_set(to_set);
    const Eigen::Matrix3d f_from = full_map(mc, from_set);
    const Eigen::Matrix3d f_to = full_map(mc, to_set);
    return top_left(f_to * f_from.inverse());
}

JacobiTransform exchange_transform(const MassConfig& mc, int set) {
    check_set(set);
    Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
    p(0, 0) = 1.0;
    p(1, 2) = 1.0;
    p(2, 1) = 1.0;
    const Eigen::Matrix3d f = full_map(mc, set);
    return top_left(f * p * f.inverse());
}

} // namespace triores
