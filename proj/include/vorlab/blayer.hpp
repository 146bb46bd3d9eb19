// Boundary-layer corrector machinery: the wall-data space Z with its
// weighted Sobolev norm, the explicit divergence-free corrector
//   J1[h] = h(xi1) (1 - Xi) e^{-Xi},  J2[h] = -alpha^{-1/2} Xi e^{-Xi} h'(xi1),
//   Xi = sqrt(alpha) xi2,
// the alpha-scaling study on a layer-resolving tensor grid, and slip-trace
// extraction from viscous resolvent solves.
#pragma once
#include "biot_savart.hpp"
#include "eig.hpp"

namespace vorlab {

struct BoundaryData {
    Vec xi1;
    double dx = 0.0;
    CVec h;

    static BoundaryData from_function(double L, int n, const std::function<double(double)>& f) {
        BoundaryData b;
        b.dx = 2.0 * L / (n - 1);
        b.xi1.resize(n);
        b.h.resize(n);
        for (int i = 0; i < n; ++i) {
            b.xi1[i] = -L + i * b.dx;
            b.h[i] = f(b.xi1[i]);
        }
        return b;
    }

    static BoundaryData from_wall(const Grid2D& g, CVec wall_values) {
        require(g.kind == DomainKind::Half, "wall data lives on a half-plane grid");
        require(wall_values.size() == g.nx(), "wall trace length mismatch");
        BoundaryData b;
        b.dx = g.h;
        b.xi1.resize(g.nx());
        for (int i = 0; i < g.nx(); ++i) b.xi1[i] = g.xi1(i);
        b.h = std::move(wall_values);
        return b;
    }

    // j-fold application of the 1D first-derivative stencil (centered
    // interior, one-sided 2nd order at the ends).
    CVec deriv(int j) const {
        CVec d = h;
        const int n = static_cast<int>(h.size());
        for (int rep = 0; rep < j; ++rep) {
            CVec out(n);
            out[0] = (-3.0 * d[0] + 4.0 * d[1] - d[2]) / (2.0 * dx);
            out[n - 1] = (3.0 * d[n - 1] - 4.0 * d[n - 2] + d[n - 3]) / (2.0 * dx);
            for (int i = 1; i < n - 1; ++i) out[i] = (d[i + 1] - d[i - 1]) / (2.0 * dx);
            d = std::move(out);
        }
        return d;
    }

    bool decays(double tol = 1e-8) const {
        return std::abs(h[0]) < tol && std::abs(h[h.size() - 1]) < tol;
    }
};

namespace detail {
inline double norm1d(const CVec& v, double dx) { return std::sqrt(v.squaredNorm() * dx); }
}

// ||h||_Z = ||h||_{W^{5,2}} + sum_{l=0,1} ||xi1 d^{l+1} h||_{L^2}.
inline double z_norm(const BoundaryData& b) {
    double w52 = 0.0;
    for (int j = 0; j <= 5; ++j) {
        const double nj = detail::norm1d(b.deriv(j), b.dx);
        w52 += nj * nj;
    }
    double weighted = 0.0;
    for (int l = 0; l <= 1; ++l) {
        CVec d = b.deriv(l + 1);
        for (int i = 0; i < d.size(); ++i) d[i] *= b.xi1[i];
        weighted += detail::norm1d(d, b.dx);
    }
    return std::sqrt(w52) + weighted;
}

// Corrector on a half-plane grid; wall data must be sampled on the grid's
// wall line. J1|wall = h and J2|wall = 0 hold exactly.
inline VectorField corrector_J(const BoundaryData& b, double alpha, const Grid2D& g) {
    require(g.kind == DomainKind::Half, "corrector lives on the half plane");
    require(b.h.size() == g.nx() && std::abs(b.dx - g.h) < 1e-14 * g.h,
            "wall data must be sampled on the grid wall line");
    require(alpha >= 1.0, "alpha must be >= 1");
    const double sq = std::sqrt(alpha);
    CVec hp = b.deriv(1);
    VectorField J(g);
    for (int j = 0; j < g.ny(); ++j) {
        const double Xi = sq * g.xi2(j);
        const double f = (1.0 - Xi) * std::exp(-Xi);
        const double q = Xi * std::exp(-Xi);
        for (int i = 0; i < g.nx(); ++i) {
            J.c1.at(i, j) = b.h[i] * f;
            J.c2.at(i, j) = -(1.0 / sq) * q * hp[i];
        }
    }
    return J;
}

// ---------------------------------------------------------------------------
// Scaling study on a tensor grid that resolves the layer width alpha^{-1/2}
// in xi2 regardless of alpha. All 2D norms of J factor into products of 1D
// integrals of the wall data and of the layer profiles f, q, which are
// differenced numerically on the refined xi2 grid.

struct CorrectorScalingRow {
    double alpha = 0.0;
    double norm_J = 0.0, norm_gradJ = 0.0, norm_grad2J = 0.0, norm_xi_gradJ = 0.0;
    double max_div = 0.0, div_bound = 0.0;
    double wall_err1 = 0.0, wall_err2 = 0.0;
    double smallness_const = 0.0;  // ||J|| alpha^{1/4} / ||h||_Z
};

struct CorrectorReport {
    std::vector<CorrectorScalingRow> rows;
    double znorm_h = 0.0;
    double slope_J = 0.0, slope_gradJ = 0.0, slope_grad2J = 0.0, slope_xi_gradJ = 0.0;
};

namespace detail {

struct LayerProfiles {
    Vec xi2;      // refined grid, spacing h2
    double h2;
    Vec f, q;     // layer profiles sampled
    Vec df, dq, d2f, d2q;  // numerical derivatives w.r.t. xi2

    LayerProfiles(double alpha, int per_layer, int max_nodes) {
        const double delta = 1.0 / std::sqrt(alpha);
        h2 = delta / per_layer;
        const double extent = 60.0 * delta;
        const int ny = static_cast<int>(std::ceil(extent / h2)) + 1;
        if (ny > max_nodes)
            throw LayerUnderResolved("layer grid would need " + std::to_string(ny) + " nodes");
        xi2.resize(ny);
        f.resize(ny);
        q.resize(ny);
        const double sq = std::sqrt(alpha);
        for (int k = 0; k < ny; ++k) {
            xi2[k] = k * h2;
            const double Xi = sq * xi2[k];
            f[k] = (1.0 - Xi) * std::exp(-Xi);
            q[k] = Xi * std::exp(-Xi);
        }
        df = d1(f);
        dq = d1(q);
        d2f = d1(df);
        d2q = d1(dq);
    }

    Vec d1(const Vec& v) const {
        const int n = static_cast<int>(v.size());
        Vec out(n);
        out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h2);
        out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h2);
        for (int i = 1; i < n - 1; ++i) out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h2);
        return out;
    }
    double nrm(const Vec& v) const { return std::sqrt(v.squaredNorm() * h2); }
    double ip(const Vec& a, const Vec& b) const { return a.dot(b) * h2; }
    Vec xi_times(const Vec& v) const {
        Vec out = v;
        for (int k = 0; k < v.size(); ++k) out[k] *= xi2[k];
        return out;
    }
};

}  // namespace detail

inline CorrectorReport corrector_scaling(const BoundaryData& b, const std::vector<double>& alphas,
                                         int per_layer = 8, int max_nodes = 2000000) {
    require(alphas.size() >= 4, "scaling fits need at least 4 alphas");
    CorrectorReport rep;
    rep.znorm_h = z_norm(b);
    const double dx = b.dx;
    CVec h0 = b.h, h1 = b.deriv(1), h2d = b.deriv(2), h3 = b.deriv(3);
    auto n1 = [&](const CVec& v) { return detail::norm1d(v, dx); };
    auto x_times = [&](const CVec& v) {
        CVec out = v;
        for (int i = 0; i < v.size(); ++i) out[i] *= b.xi1[i];
        return out;
    };
    auto ip1 = [&](const CVec& a, const CVec& c) { return (a.dot(c) * dx).real(); };

    std::vector<double> as, nJ, ngJ, ng2J, nxgJ;
    for (double alpha : alphas) {
        detail::LayerProfiles lp(alpha, per_layer, max_nodes);
        const double sq = std::sqrt(alpha);
        CorrectorScalingRow row;
        row.alpha = alpha;

        // J1 = h f, J2 = -(1/sq) h' q
        const double J1 = n1(h0) * lp.nrm(lp.f);
        const double J2 = n1(h1) * lp.nrm(lp.q) / sq;
        row.norm_J = std::hypot(J1, J2);

        // gradient entries
        const double d1J1 = n1(h1) * lp.nrm(lp.f);
        const double d2J1 = n1(h0) * lp.nrm(lp.df);
        const double d1J2 = n1(h2d) * lp.nrm(lp.q) / sq;
        const double d2J2 = n1(h1) * lp.nrm(lp.dq) / sq;
        row.norm_gradJ = std::sqrt(d1J1 * d1J1 + d2J1 * d2J1 + d1J2 * d1J2 + d2J2 * d2J2);

        // Hessian entries (mixed ones counted twice)
        const double a11J1 = n1(h2d) * lp.nrm(lp.f);
        const double a12J1 = n1(h1) * lp.nrm(lp.df);
        const double a22J1 = n1(h0) * lp.nrm(lp.d2f);
        const double a11J2 = n1(h3) * lp.nrm(lp.q) / sq;
        const double a12J2 = n1(h2d) * lp.nrm(lp.dq) / sq;
        const double a22J2 = n1(h1) * lp.nrm(lp.d2q) / sq;
        row.norm_grad2J =
            std::sqrt(a11J1 * a11J1 + 2 * a12J1 * a12J1 + a22J1 * a22J1 + a11J2 * a11J2 +
                      2 * a12J2 * a12J2 + a22J2 * a22J2);

        // xi . grad J, expanded into tensor pairs per component
        {
            CVec A = x_times(h1);
            const Vec g1 = lp.xi_times(lp.df);
            const double c1 = n1(A) * n1(A) * lp.ip(lp.f, lp.f) +
                              2.0 * ip1(A, h0) * lp.ip(lp.f, g1) +
                              n1(h0) * n1(h0) * lp.ip(g1, g1);
            CVec B = x_times(h2d);
            const Vec g2 = lp.xi_times(lp.dq);
            const double c2 = (n1(B) * n1(B) * lp.ip(lp.q, lp.q) +
                               2.0 * ip1(B, h1) * lp.ip(lp.q, g2) +
                               n1(h1) * n1(h1) * lp.ip(g2, g2)) /
                              (sq * sq);
            row.norm_xi_gradJ = std::sqrt(std::max(c1, 0.0) + std::max(c2, 0.0));
        }

        // wall exactness and discrete divergence on the tensor patch; the
        // sampled profiles already carry d/dxi2, including the sqrt(alpha).
        {
            row.wall_err1 = 0.0;
            row.wall_err2 = 0.0;
            for (int ii = 0; ii < h0.size(); ++ii) {
                row.wall_err1 = std::max(row.wall_err1, std::abs(h0[ii] * lp.f[0] - h0[ii]));
                row.wall_err2 = std::max(row.wall_err2, std::abs(h1[ii] * lp.q[0] / sq));
            }
            double mdiv = 0.0;
            const int nx = static_cast<int>(h0.size());
            const int ny = static_cast<int>(lp.xi2.size());
            for (int jj = 1; jj < ny - 1; ++jj)
                for (int ii = 1; ii < nx - 1; ++ii) {
                    const Complex dJ1 = (h0[ii + 1] - h0[ii - 1]) / (2.0 * dx) * lp.f[jj];
                    const Complex dJ2 = -(1.0 / sq) * h1[ii] *
                                        (lp.q[jj + 1] - lp.q[jj - 1]) / (2.0 * lp.h2);
                    mdiv = std::max(mdiv, std::abs(dJ1 + dJ2));
                }
            row.max_div = mdiv;
            const double B1 = h3.cwiseAbs().maxCoeff();
            const double B2 = 3.0 * alpha * h1.cwiseAbs().maxCoeff();
            row.div_bound = (10.0 / 6.0) * (dx * dx * B1 + lp.h2 * lp.h2 * B2);
        }

        row.smallness_const = row.norm_J * std::pow(alpha, 0.25) / rep.znorm_h;
        as.push_back(alpha);
        nJ.push_back(row.norm_J);
        ngJ.push_back(row.norm_gradJ);
        ng2J.push_back(row.norm_grad2J);
        nxgJ.push_back(row.norm_xi_gradJ);
        rep.rows.push_back(row);
    }
    auto slope = [&](const std::vector<double>& y) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(as.size());
        for (int k = 0; k < n; ++k) {
            const double lx = std::log(as[k]), ly = std::log(y[k]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    rep.slope_J = slope(nJ);
    rep.slope_gradJ = slope(ngJ);
    rep.slope_grad2J = slope(ng2J);
    rep.slope_xi_gradJ = slope(nxgJ);
    return rep;
}

// ---------------------------------------------------------------------------
// Slip trace: h = -v1[g]|wall with v1[g] = d2 (-lap_D)^{-1} (lambda-M_alpha)^{-1} g,
// extracted with the one-sided trace stencil.

struct SlipTraceReport {
    BoundaryData h;
    double znorm = 0.0;
    double g_norm = 0.0;
    double ratio = 0.0;  // ||h||_Z / ||g||
};

inline SlipTraceReport slip_trace(const ScalarField& gfield, Complex lambda,
                                  const OperatorMatrix& Malpha, const DirichletPoisson& poisson,
                                  const ShiftedSolver* cached = nullptr) {
    const DomainRestriction& R = Malpha.dofs;
    require(gfield.grid == R.grid, "source grid mismatch");
    require(Malpha.row_weight.size() == R.size(), "expected a weighted M_alpha operator");
    CVec gw(R.size());
    for (int q = 0; q < R.size(); ++q)
        gw[q] = gfield.values[R.nodes[q]] * Malpha.row_weight[q];
    CVec w = resolvent_apply(Malpha, lambda, gw, 1e-10, cached);
    ScalarField omega(R.grid);
    for (int q = 0; q < R.size(); ++q)
        omega.values[R.nodes[q]] = w[q] / Malpha.row_weight[q];
    ScalarField psi = poisson.solve(omega);
    CVec v1 = wall_normal_derivative(psi);
    SlipTraceReport rep;
    rep.h = BoundaryData::from_wall(R.grid, -v1);
    rep.znorm = z_norm(rep.h);
    rep.g_norm = norm(gfield);
    rep.ratio = rep.g_norm > 0.0 ? rep.znorm / rep.g_norm : 0.0;
    return rep;
}

}  // namespace vorlab
