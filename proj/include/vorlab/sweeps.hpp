// Parameter sweeps: eigenvalue persistence under mirroring distance R and
// under vanishing viscosity (alpha), with log-log slope fits against the
// theoretical rate laws.
#pragma once
#include "assemble.hpp"
#include "eig.hpp"
#include "mirrored.hpp"
#include "neumann.hpp"

namespace vorlab {

struct SweepRecord {
    double param = 0.0;  // R or alpha
    Complex lambda;
    double residual = 0.0;
    double dist_to_ref = 0.0;
    double slope_so_far = std::numeric_limits<double>::quiet_NaN();
    bool in_disc = false;
};

// Least-squares slope of log(y) against log(x); needs at least 4 points.
inline double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 4 || x.size() != y.size())
        return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int k = 0; k < n; ++k) {
        const double lx = std::log(x[k]), ly = std::log(std::max(y[k], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Pick an isolated eigenvalue: inside the hint disc when given (minimal
// residual, then maximal real part), otherwise the best-isolated credible
// pair, unstable ones first.
inline Complex select_isolated(const SpectrumResult& s, std::optional<Disc> hint, double eps,
                               double residual_tol = 1e-8) {
    auto isolation = [&](Complex z) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& p : s.pairs) {
            const double dd = std::abs(p.lambda - z);
            if (dd > 1e-12) d = std::min(d, dd);
        }
        return d;
    };
    const EigPair* pick = nullptr;
    if (hint) {
        for (const auto& p : s.pairs) {
            if (!hint->contains(p.lambda) || p.residual > residual_tol) continue;
            if (!pick || p.residual < pick->residual - 1e-14 ||
                (std::abs(p.residual - pick->residual) <= 1e-14 &&
                 p.lambda.real() > pick->lambda.real()))
                pick = &p;
        }
        if (!pick) throw NoIsolatedEigenvalue("no credible eigenvalue inside the hint disc");
    } else {
        auto better = [&](const EigPair& a, const EigPair* b) {
            if (!b) return true;
            const bool ua = a.lambda.real() > 4.0 * residual_tol;
            const bool ub = b->lambda.real() > 4.0 * residual_tol;
            if (ua != ub) return ua;
            const double ia = isolation(a.lambda), ib = isolation(b->lambda);
            if (std::abs(ia - ib) > 1e-12) return ia > ib;
            if (a.lambda.real() != b->lambda.real()) return a.lambda.real() > b->lambda.real();
            return a.lambda.imag() > b->lambda.imag();
        };
        for (const auto& p : s.pairs) {
            if (p.residual > residual_tol) continue;
            if (better(p, pick)) pick = &p;
        }
        if (!pick) throw NoIsolatedEigenvalue("no eigenpair met the residual tolerance");
    }
    if (!is_isolated(s, pick->lambda, eps, residual_tol))
        throw NoIsolatedEigenvalue("selected eigenvalue is not isolated at the working radius");
    return pick->lambda;
}

// Single-vortex fields centered at the origin.
inline void sample_single_vortex(const RadialProfile& p, const Grid2D& g, VectorField& U,
                                 ScalarField& W) {
    U = VectorField(g);
    W = ScalarField(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.xi1(i), y = g.xi2(j);
            const double z = p.zeta(std::hypot(x, y));
            U.c1.at(i, j) = -z * y;
            U.c2.at(i, j) = z * x;
            W.at(i, j) = p.omega(std::hypot(x, y));
        }
}

// ---------------------------------------------------------------------------
// R sweep: lambda_R of the mirrored operator (odd subspace) against the
// single-lobe lambda_inf, plus the measured cross-lobe coupling norm.

struct RSweepConfig {
    double R0 = 2.0;
    std::vector<double> R_list{4.0, 6.0, 8.0, 12.0};
    double h_target = 0.25;
    double pad = -1.0;  // mask padding; default 4h
    double eps = 0.05;  // membership/isolation radius
    std::optional<Disc> hint;
    double residual_tol = 1e-8;
};

struct RSweepResult {
    Complex lambda_inf;
    std::vector<SweepRecord> records;
    std::vector<double> norm_UR;
    double slope_lambda = std::numeric_limits<double>::quiet_NaN();
    double slope_UR = std::numeric_limits<double>::quiet_NaN();
    SpectrumResult single_spectrum;
};

inline int nodes_for(double L, double h) {
    int n = static_cast<int>(std::lround(2.0 * L / h)) + 1;
    if (n % 2 == 0) ++n;
    return std::max(n, 17);
}

inline RSweepResult sweep_R(const RadialProfile& prof, const RSweepConfig& cfg) {
    RSweepResult out;
    const double h = cfg.h_target;
    const double pad = cfg.pad > 0.0 ? cfg.pad : 4.0 * h;

    // reference: single lobe at the origin on a lattice-aligned box
    const double Ls = std::ceil((cfg.R0 + pad + 6.0 * h) / h) * h;
    Grid2D gs = make_grid(DomainKind::Whole, Ls, nodes_for(Ls, h));
    VectorField Us;
    ScalarField Ws;
    sample_single_vortex(prof, gs, Us, Ws);
    DomainRestriction Rs = DomainRestriction::discs(gs, {{0.0, 0.0}}, cfg.R0 + pad);
    OperatorMatrix single = assemble_transport(Us, Rs) + assemble_perturbation(Ws, Rs, false);
    out.single_spectrum = eig(single, {}, {.residual_tol = cfg.residual_tol});
    out.lambda_inf = select_isolated(out.single_spectrum, cfg.hint, cfg.eps, cfg.residual_tol);

    std::vector<double> gaps, dists;
    for (double R : cfg.R_list) {
        require(std::abs(R / h - std::lround(R / h)) < 1e-9,
                "R must sit on the grid lattice for the sweep");
        const double L = std::ceil((R + 3.0 * cfg.R0) / h) * h;
        MirroredFlow m = build_mirrored(prof, cfg.R0, R, nodes_for(L, h), L);
        LambdaERParts parts = assemble_lambda_ER(m, pad);
        auto [Ao, upper] = dense_odd_reduction(parts);
        DenseEig d = dense_eig(Ao);

        SweepRecord rec;
        rec.param = R;
        int best = 0;
        for (int k = 1; k < d.values.size(); ++k)
            if (std::abs(d.values[k] - out.lambda_inf) <
                std::abs(d.values[best] - out.lambda_inf))
                best = k;
        rec.lambda = d.values[best];
        CVec v = d.right.col(best);
        rec.residual = (Ao * v - rec.lambda * v).norm() / v.norm();
        rec.dist_to_ref = std::abs(rec.lambda - out.lambda_inf);
        rec.in_disc = rec.dist_to_ref < cfg.eps;

        NeumannResolventER solver(parts, out.lambda_inf + cfg.eps);
        out.norm_UR.push_back(solver.measure_norm_UR());

        gaps.push_back(R - cfg.R0);
        dists.push_back(rec.dist_to_ref);
        rec.slope_so_far = fit_loglog_slope(gaps, dists);
        out.records.push_back(rec);
    }
    out.slope_lambda = fit_loglog_slope(gaps, dists);
    out.slope_UR = fit_loglog_slope(gaps, out.norm_UR);
    return out;
}

// ---------------------------------------------------------------------------
// alpha sweep: lambda_alpha of M_alpha against lambda_E of the inviscid
// operator on the compact mask.

struct AlphaSweepConfig {
    std::vector<double> alphas{1e2, 1e3, 1e4, 1e5};
    double eps = -1.0;  // default max(0.05 |lambda_E|, 3 residual_tol)
    std::optional<Disc> hint;
    double residual_tol = 1e-8;
    bool shift_invert = true;
    int krylov = 90;
    double pad = -1.0;
};

struct AlphaSweepResult {
    Complex lambda_E;
    double eps = 0.0;
    std::vector<SweepRecord> records;
    double slope = std::numeric_limits<double>::quiet_NaN();
};

inline AlphaSweepResult sweep_alpha(const MirroredFlow& m, const AlphaSweepConfig& cfg) {
    auto [UE, OmegaE] = to_half_plane(m);
    const Grid2D& g = UE.grid();
    const double pad = cfg.pad > 0.0 ? cfg.pad : 4.0 * g.h;

    DomainRestriction mask = DomainRestriction::discs(g, {{0.0, m.R}}, m.R0 + pad);
    OperatorMatrix lamE_op = assemble_lambda_E(UE, OmegaE, mask);
    SpectrumResult lamE_spec = eig(lamE_op, {}, {.residual_tol = cfg.residual_tol});

    AlphaSweepResult out;
    out.lambda_E = select_isolated(lamE_spec, cfg.hint, std::max(cfg.eps, 0.0), cfg.residual_tol);
    out.eps = cfg.eps > 0.0 ? cfg.eps
                            : std::max(0.05 * std::abs(out.lambda_E), 3.0 * cfg.residual_tol);

    // the paper takes alpha >= 1/r_E with r_E < Re(lambda_E)
    const double reE = out.lambda_E.real();
    if (reE > cfg.residual_tol)
        for (double a : cfg.alphas)
            require(a >= 1.0 / reE, "alpha below the 1/Re(lambda_E) threshold");

    std::vector<double> alphas_sorted = cfg.alphas;
    std::sort(alphas_sorted.begin(), alphas_sorted.end());
    DomainRestriction full = DomainRestriction::full_interior(g);

    std::vector<double> xs, ys;
    for (double alpha : alphas_sorted) {
        OperatorMatrix M = assemble_M_alpha(UE, OmegaE, alpha, full);
        EigOptions opt;
        opt.residual_tol = cfg.residual_tol;
        opt.shift_invert = cfg.shift_invert;
        opt.arnoldi.krylov = cfg.krylov;
        // collect candidates around lambda_E, then take the nearest
        SpectrumResult s = eig(M, Disc{out.lambda_E, std::max(8.0 * out.eps, 0.5)}, opt);
        const EigPair* p = s.nearest(out.lambda_E);
        require(p != nullptr, "no eigenvalue returned near lambda_E");
        SweepRecord rec;
        rec.param = alpha;
        rec.lambda = p->lambda;
        rec.residual = p->residual;
        rec.dist_to_ref = std::abs(p->lambda - out.lambda_E);
        rec.in_disc = rec.dist_to_ref < out.eps;
        xs.push_back(alpha);
        ys.push_back(rec.dist_to_ref);
        rec.slope_so_far = fit_loglog_slope(xs, ys);
        out.records.push_back(rec);
    }
    out.slope = fit_loglog_slope(xs, ys);
    return out;
}

}  // namespace vorlab
