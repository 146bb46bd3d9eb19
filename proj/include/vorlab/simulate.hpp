// Nonlinear time integration of the self-similar vorticity equation under
// perfect slip,
//   d_tau omega = (lap + xi/2.grad + 1) omega - div(v omega) + G,
//   v = K[omega],
// with the stationary forcing G fixed once so that alpha*Omega_E is an
// exact discrete equilibrium. The advection is kept in conservative form
// and the velocity comes from the grid Poisson solve; the linearized
// operator is assembled with exactly the same stencils so the
// finite-difference Jacobian matches the matrix action.
#pragma once
#include "assemble.hpp"
#include "biot_savart.hpp"
#include "eig.hpp"

namespace vorlab {

struct SimConfig {
    double alpha = 1000.0;
    double dt = 0.0;  // 0: derive from the CFL bound at the initial state
    double horizon = 0.1;
    double eps_pert = 1e-6;  // perturbation norm relative to ||alpha Omega_E||
    int log_every = 1;
    double cfl_safety = 0.5;
    double blowup_factor = 1e6;
};

struct TrajectoryLog {
    std::vector<double> tau;
    std::vector<double> base_dev;    // ||omega - alpha Omega_E||
    std::vector<double> base_dev_w;  // same, gaussian-weighted (capped)
    std::vector<double> pair_dist;   // ||omega_B - omega_A|| (pair runs)
    double fitted_rate = std::numeric_limits<double>::quiet_NaN();
    double fitted_freq = std::numeric_limits<double>::quiet_NaN();
    double fit_r2 = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
};

class SelfSimilarSim {
  public:
    SelfSimilarSim(const ScalarField& OmegaE, double alpha)
        : grid_(OmegaE.grid), poisson_(grid_), alpha_(alpha) {
        require(grid_.kind == DomainKind::Half, "simulation runs on the half plane");
        base_ = ScalarField(grid_);
        base_.values = alpha * OmegaE.values;
        zero_boundary(base_);
        forcing_ = ScalarField(grid_);
        forcing_.values = -unforced_rhs(base_).values;
    }

    const Grid2D& grid() const { return grid_; }
    const ScalarField& base() const { return base_; }
    double alpha() const { return alpha_; }
    const DirichletPoisson& poisson() const { return poisson_; }

    static void zero_boundary(ScalarField& w) {
        const Grid2D& g = w.grid;
        for (int i = 0; i < g.nx(); ++i) {
            w.at(i, 0) = 0.0;
            w.at(i, g.ny() - 1) = 0.0;
        }
        for (int j = 0; j < g.ny(); ++j) {
            w.at(0, j) = 0.0;
            w.at(g.nx() - 1, j) = 0.0;
        }
    }

    ScalarField rhs(const ScalarField& w) const {
        ScalarField out = unforced_rhs(w);
        out.values += forcing_.values;
        SelfSimilarSim::zero_boundary(out);
        return out;
    }

    // CFL bound covering advection, unit-viscosity diffusion and the
    // self-similar drift.
    double cfl_dt(const ScalarField& w, double safety = 0.5) const {
        ScalarField psi = poisson_.solve(w);
        VectorField v = grad_perp(psi);
        const double vmax = std::max(v.max_abs(), 1e-12);
        const double h = grid_.h;
        return safety * std::min({h / vmax, h * h / 4.0, 2.0 / grid_.L});
    }

    ScalarField step(const ScalarField& w, double dt, double blowup_scale = 0.0,
                     double blowup_factor = 1e6) const {
        ScalarField k1 = rhs(w);
        ScalarField s2(grid_);
        s2.values = w.values + 0.5 * dt * k1.values;
        zero_boundary(s2);
        ScalarField k2 = rhs(s2);
        ScalarField s3(grid_);
        s3.values = w.values + 0.5 * dt * k2.values;
        zero_boundary(s3);
        ScalarField k3 = rhs(s3);
        ScalarField s4(grid_);
        s4.values = w.values + dt * k3.values;
        zero_boundary(s4);
        ScalarField k4 = rhs(s4);
        ScalarField out(grid_);
        out.values = w.values + (dt / 6.0) * (k1.values + 2.0 * k2.values +
                                              2.0 * k3.values + k4.values);
        zero_boundary(out);
        if (blowup_scale > 0.0 && out.max_abs() > blowup_factor * blowup_scale)
            throw BlowUp("field norm exceeded the blow-up guard");
        return out;
    }

    // Linearized operator at the base state, sim-consistent stencils:
    // M = (1/alpha)(lap + xi/2.grad + 1) + [-div(v_E .) - K[.].grad Omega_E]
    // with v_E = K[Omega_E] from the grid solve. alpha * M is the exact
    // Jacobian of rhs at alpha*Omega_E.
    OperatorMatrix linearized_operator() const {
        DomainRestriction R = DomainRestriction::full_interior(grid_);
        const int N = R.size();

        ScalarField psi = poisson_.solve(base_);
        VectorField vb = grad_perp(psi);  // = alpha * v_E

        OperatorMatrix A = assemble_transport(vb, R);  // -div(v_b .)
        {
            // add the viscous/drift stencil (lap + xi/2.grad + 1)
            const double ih2 = 1.0 / (grid_.h * grid_.h);
            const double i2h = 1.0 / (2.0 * grid_.h);
            std::vector<Eigen::Triplet<double>> trip;
            for (int q = 0; q < N; ++q) {
                const int gl = R.nodes[q];
                const int i = gl % grid_.nx(), j = gl / grid_.nx();
                const double x = grid_.xi1(i), y = grid_.xi2(j);
                trip.emplace_back(q, q, -4.0 * ih2 + 1.0);
                auto add = [&](int ii, int jj, double c) {
                    const int lj = R.local_of[grid_.idx(ii, jj)];
                    if (lj >= 0) trip.emplace_back(q, lj, c);
                };
                add(i + 1, j, ih2 + 0.5 * x * i2h);
                add(i - 1, j, ih2 - 0.5 * x * i2h);
                add(i, j + 1, ih2 + 0.5 * y * i2h);
                add(i, j - 1, ih2 - 0.5 * y * i2h);
            }
            Eigen::SparseMatrix<double> H(N, N);
            H.setFromTriplets(trip.begin(), trip.end());
            A.local += H;
        }

        // nonlocal part: column j is -div(K[e_j] base) restricted to rows
        // whose conservative stencil touches supp(base); assembled with the
        // same Poisson solver and stencil as the nonlinear term.
        std::vector<int> rows;
        for (int q = 0; q < N; ++q) {
            const int gl = R.nodes[q];
            const int i = gl % grid_.nx(), j = gl / grid_.nx();
            bool touch = false;
            for (int d = 0; d < 5 && !touch; ++d) {
                static const int di[5] = {0, 1, -1, 0, 0}, dj[5] = {0, 0, 0, 1, -1};
                touch = base_.at(i + di[d], j + dj[d]) != 0.0;
            }
            if (touch) rows.push_back(q);
        }
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(rows.size(), N);
        ScalarField ej(grid_);
        for (int col = 0; col < N; ++col) {
            ej.values.setZero();
            ej.values[R.nodes[col]] = 1.0;
            ScalarField pj = poisson_.solve(ej);
            VectorField kj = grad_perp(pj);
            // -div(K[e_j] base) at the coupling rows
            for (size_t q = 0; q < rows.size(); ++q) {
                const int gl = R.nodes[rows[q]];
                const int i = gl % grid_.nx(), j = gl / grid_.nx();
                const double c = 1.0 / (2.0 * grid_.h);
                const Complex t =
                    -c * (kj.c1.at(i + 1, j) * base_.at(i + 1, j) -
                          kj.c1.at(i - 1, j) * base_.at(i - 1, j) +
                          kj.c2.at(i, j + 1) * base_.at(i, j + 1) -
                          kj.c2.at(i, j - 1) * base_.at(i, j - 1));
                block(q, col) = t.real();
            }
        }
        A.coupling = std::move(block);
        A.coupling_rows = std::move(rows);
        A.local /= alpha_;
        A.coupling /= alpha_;
        A.provenance = "M_alpha(sim-consistent,alpha=" + std::to_string(alpha_) + ")";
        return A;
    }

  private:
    ScalarField unforced_rhs(const ScalarField& w) const {
        ScalarField psi = poisson_.solve(w);
        VectorField v = grad_perp(psi);
        ScalarField out(grid_);
        const double ih2 = 1.0 / (grid_.h * grid_.h);
        const double i2h = 1.0 / (2.0 * grid_.h);
        for (int j = 1; j < grid_.ny() - 1; ++j)
            for (int i = 1; i < grid_.nx() - 1; ++i) {
                const double x = grid_.xi1(i), y = grid_.xi2(j);
                const Complex lap = (w.at(i + 1, j) + w.at(i - 1, j) + w.at(i, j + 1) +
                                     w.at(i, j - 1) - 4.0 * w.at(i, j)) *
                                    ih2;
                const Complex drift = 0.5 * x * (w.at(i + 1, j) - w.at(i - 1, j)) * i2h +
                                      0.5 * y * (w.at(i, j + 1) - w.at(i, j - 1)) * i2h;
                const Complex adv =
                    (v.c1.at(i + 1, j) * w.at(i + 1, j) - v.c1.at(i - 1, j) * w.at(i - 1, j) +
                     v.c2.at(i, j + 1) * w.at(i, j + 1) - v.c2.at(i, j - 1) * w.at(i, j - 1)) *
                    i2h;
                out.at(i, j) = lap + drift + w.at(i, j) - adv;
            }
        return out;
    }

    Grid2D grid_;
    DirichletPoisson poisson_;
    double alpha_;
    ScalarField base_;
    ScalarField forcing_;
};

// ---------------------------------------------------------------------------
// Paired runs: base equilibrium vs eigenmode-seeded perturbation.

struct PairRunResult {
    TrajectoryLog base_log, pert_log;
    double rate_target = 0.0;  // alpha * Re(lambda_alpha)
    double freq_target = 0.0;  // alpha * |Im(lambda_alpha)|
};

inline PairRunResult run_pair(const SelfSimilarSim& sim, const EigPair& mode,
                              const SimConfig& cfg) {
    const Grid2D& g = sim.grid();
    DomainRestriction R = DomainRestriction::full_interior(g);
    require(mode.vec.size() == R.size(), "eigenmode does not match the DOF set");
    require(cfg.eps_pert <= 1e-4, "perturbation must start in the linear regime");

    const double base_norm = norm(sim.base());
    ScalarField pert = to_field(R, mode.vec);
    ScalarField pert_re(g);
    pert_re.values = pert.values.real().cast<Complex>();
    const double amp = cfg.eps_pert * base_norm / norm(pert_re);
    pert_re.values *= amp;

    ScalarField wA = sim.base();
    ScalarField wB(g);
    wB.values = sim.base().values + pert_re.values;
    SelfSimilarSim::zero_boundary(wB);

    const double dt = cfg.dt > 0.0 ? cfg.dt : sim.cfl_dt(wB, cfg.cfl_safety);
    const int nsteps = static_cast<int>(std::ceil(cfg.horizon / dt));
    const Weight wrho = Weight::gaussian_rho();

    PairRunResult out;
    std::vector<double> phase_tau, phases;

    auto log_state = [&](double tau) {
        ScalarField dA(g), dB(g), dAB(g);
        dA.values = wA.values - sim.base().values;
        dB.values = wB.values - sim.base().values;
        dAB.values = wB.values - wA.values;
        out.base_log.tau.push_back(tau);
        out.base_log.base_dev.push_back(norm(dA));
        out.base_log.base_dev_w.push_back(norm(dA, wrho));
        out.pert_log.tau.push_back(tau);
        out.pert_log.base_dev.push_back(norm(dB));
        out.pert_log.base_dev_w.push_back(norm(dB, wrho));
        out.pert_log.pair_dist.push_back(norm(dAB));
        // phase of the eigenmode component, for the frequency fit
        Complex z = 0.0;
        for (int q = 0; q < R.size(); ++q) z += std::conj(mode.vec[q]) * dAB.values[R.nodes[q]];
        phase_tau.push_back(tau);
        phases.push_back(std::abs(z) > 0.0 ? std::arg(z) : 0.0);
    };

    log_state(0.0);
    const double initial_dist = out.pert_log.pair_dist[0];
    double tau = 0.0;
    for (int k = 0; k < nsteps; ++k) {
        wA = sim.step(wA, dt, base_norm, cfg.blowup_factor);
        wB = sim.step(wB, dt, base_norm, cfg.blowup_factor);
        tau += dt;
        if ((k + 1) % cfg.log_every == 0) log_state(tau);
        if (out.pert_log.pair_dist.back() > 0.12 * base_norm) break;  // saturated
    }

    // linear-regime window [10 eps_p, 0.1 ||base||]
    TrajectoryLog& pl = out.pert_log;
    pl.window_lo = 10.0 * initial_dist;
    pl.window_hi = 0.1 * base_norm;
    std::vector<double> ts, ls;
    std::vector<double> pts, pps;
    for (size_t k = 0; k < pl.tau.size(); ++k) {
        if (pl.pair_dist[k] < pl.window_lo || pl.pair_dist[k] > pl.window_hi) continue;
        ts.push_back(pl.tau[k]);
        ls.push_back(std::log(pl.pair_dist[k]));
        pts.push_back(phase_tau[k]);
        pps.push_back(phases[k]);
    }
    if (ts.size() < 5) throw WindowTooShort("only " + std::to_string(ts.size()) +
                                            " log points inside the linear window");
    // least squares line and R^2
    const int n = static_cast<int>(ts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int k = 0; k < n; ++k) {
        sx += ts[k];
        sy += ls[k];
        sxx += ts[k] * ts[k];
        sxy += ts[k] * ls[k];
        syy += ls[k] * ls[k];
    }
    const double denom = n * sxx - sx * sx;
    pl.fitted_rate = (n * sxy - sx * sy) / denom;
    const double r_num = n * sxy - sx * sy;
    pl.fit_r2 = (r_num * r_num) / ((n * sxx - sx * sx) * (n * syy - sy * sy));

    // frequency from the unwrapped mode phase; d(phase)/dtau = -alpha Im(lambda)
    double acc = 0.0;
    std::vector<double> unwrapped{pps.empty() ? 0.0 : pps[0]};
    for (size_t k = 1; k < pps.size(); ++k) {
        double d = pps[k] - pps[k - 1];
        while (d > std::acos(-1.0)) d -= 2.0 * std::acos(-1.0);
        while (d < -std::acos(-1.0)) d += 2.0 * std::acos(-1.0);
        acc += d;
        unwrapped.push_back(pps[0] + acc);
    }
    if (unwrapped.size() >= 5) {
        double px = 0, py = 0, pxx = 0, pxy = 0;
        const int m = static_cast<int>(unwrapped.size());
        for (int k = 0; k < m; ++k) {
            px += pts[k];
            py += unwrapped[k];
            pxx += pts[k] * pts[k];
            pxy += pts[k] * unwrapped[k];
        }
        pl.fitted_freq = std::abs((m * pxy - px * py) / (m * pxx - px * px));
    }
    return out;
}

}  // namespace vorlab
