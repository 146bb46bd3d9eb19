// 1D angular-mode reduction of the linearized operator around a radial
// vortex: on mode-m fields w(r) e^{im theta},
//   (Lambda w)(r) = -i m zeta(r) w(r) - i m omega'(r) phi_w(r)/r,
// where phi solves phi'' + phi'/r - m^2 phi/r^2 = -w with regularity at 0
// and the free-space decay phi ~ r^{-m} imposed as a Robin condition at the
// outer radius (exact for compactly supported w).
#pragma once
#include <Eigen/Dense>

#include "profile.hpp"

namespace vorlab {

struct RadialModeOperator {
    Eigen::MatrixXcd A;
    Eigen::VectorXd r;
    double dr = 0.0;
    int m = 0;
};

namespace detail {

// Thomas solve of the radial Poisson tridiagonal for one RHS.
inline Vec radial_poisson_solve(const Vec& rhs, const Eigen::VectorXd& r, double dr, int m) {
    const int n = static_cast<int>(r.size());
    Vec a(n), b(n), c(n), d = rhs;
    for (int k = 0; k < n; ++k) {
        const double rk = r[k];
        a[k] = 1.0 / (dr * dr) - 1.0 / (2.0 * rk * dr);
        b[k] = -2.0 / (dr * dr) - m * m / (rk * rk);
        c[k] = 1.0 / (dr * dr) + 1.0 / (2.0 * rk * dr);
    }
    // Robin decay phi' = -m phi / r at the last node via the ghost value
    // phi_ghost = phi_{n-2} - 2 dr (m/r) phi_{n-1}.
    {
        const double cN = c[n - 1];
        a[n - 1] += cN;
        b[n - 1] += cN * (-2.0 * dr * m / r[n - 1]);
        c[n - 1] = 0.0;
    }
    // forward elimination
    for (int k = 1; k < n; ++k) {
        const double w = a[k] / b[k - 1];
        b[k] -= w * c[k - 1];
        d[k] -= w * d[k - 1];
    }
    Vec x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (int k = n - 2; k >= 0; --k) x[k] = (d[k] - c[k] * x[k + 1]) / b[k];
    return x;
}

}  // namespace detail

inline RadialModeOperator assemble_radial_mode(const RadialProfile& prof, int m, double rmax,
                                               int nr) {
    if (m < 2) throw BadParameter("angular mode m must be >= 2");
    if (rmax <= prof.support_radius * 0.99)
        throw BadParameter("radial grid must resolve the profile support");
    RadialModeOperator op;
    op.m = m;
    op.dr = rmax / (nr + 1);
    op.r.resize(nr);
    for (int k = 0; k < nr; ++k) op.r[k] = (k + 1) * op.dr;

    Vec zeta(nr), omp(nr);
    for (int k = 0; k < nr; ++k) {
        zeta[k] = prof.zeta(op.r[k]);
        omp[k] = prof.omega_prime(op.r[k]);
    }

    op.A.resize(nr, nr);
    const Complex im(0.0, static_cast<double>(m));
    Vec e = Vec::Zero(nr);
    for (int j = 0; j < nr; ++j) {
        e[j] = 1.0;
        // RHS of the streamfunction problem is -w
        Vec phi = detail::radial_poisson_solve(-e, op.r, op.dr, m);
        for (int k = 0; k < nr; ++k) {
            Complex v = -im * omp[k] * phi[k] / op.r[k];
            if (k == j) v += -im * zeta[k];
            op.A(k, j) = v;
        }
        e[j] = 0.0;
    }
    return op;
}

// Action of the reduced operator on samples of w(r).
inline CVec radial_mode_apply(const RadialModeOperator& op, const CVec& w) {
    return op.A * w;
}

}  // namespace vorlab
