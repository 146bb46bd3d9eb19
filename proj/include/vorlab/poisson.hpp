// Dirichlet Poisson solvers on the grid boxes: a direct sparse
// factorization (default, reused across solves) and a fast sine-transform
// path. Both solve -lap psi = omega with psi = 0 on every box edge; on
// half-plane grids the wall row xi2 = 0 is one of those edges.
#pragma once
#include <fftw3.h>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "calculus.hpp"
#include "field.hpp"

namespace vorlab {

struct PoissonSolveReport {
    enum class Kind : int { DirectSparse = 0, FastSine = 1 };
    Kind kind = Kind::DirectSparse;
    double residual = 0.0;  // ||lap psi + omega|| / ||omega||, unweighted
    int iterations = 0;     // 0 for the direct paths
    bool ok = true;
    // Set when supp(omega) comes within L/4 of a non-physical box edge,
    // where the homogeneous Dirichlet truncation is unjustified.
    bool truncation_warning = false;
};

namespace detail {

inline bool support_near_outer_edge(const ScalarField& w) {
    const Grid2D& g = w.grid;
    const double thresh = 1e-12 * std::max(w.max_abs(), 1e-300);
    const double margin = g.L / 4.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            if (std::abs(w.at(i, j)) <= thresh) continue;
            if (g.L - std::abs(g.xi1(i)) < margin) return true;
            if (g.L - g.xi2(j) < margin) return true;
            if (g.kind == DomainKind::Whole && g.L + g.xi2(j) < margin) return true;
        }
    return false;
}

inline void check_wall_trace(const ScalarField& w, double tol) {
    if (w.grid.kind != DomainKind::Half) return;
    double wall = 0.0;
    for (int i = 0; i < w.grid.nx(); ++i) wall = std::max(wall, std::abs(w.at(i, 0)));
    const double scale = std::max(w.max_abs(), 1e-300);
    if (wall > tol * scale)
        throw NonzeroTrace("vorticity wall trace " + std::to_string(wall / scale) +
                           " (relative) exceeds tolerance");
}

}  // namespace detail

class DirichletPoisson {
  public:
    explicit DirichletPoisson(const Grid2D& g, double residual_tol = 1e-10,
                              double trace_tol = 1e-8)
        : grid_(g), residual_tol_(residual_tol), trace_tol_(trace_tol) {
        const int nx = g.nx(), ny = g.ny();
        const int mi = nx - 2, mj = ny - 2;
        const double ih2 = 1.0 / (g.h * g.h);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(5 * static_cast<size_t>(mi) * mj);
        auto lid = [&](int i, int j) { return (j - 1) * mi + (i - 1); };
        for (int j = 1; j <= mj; ++j)
            for (int i = 1; i <= mi; ++i) {
                const int r = lid(i, j);
                trip.emplace_back(r, r, 4.0 * ih2);
                if (i > 1) trip.emplace_back(r, lid(i - 1, j), -ih2);
                if (i < mi) trip.emplace_back(r, lid(i + 1, j), -ih2);
                if (j > 1) trip.emplace_back(r, lid(i, j - 1), -ih2);
                if (j < mj) trip.emplace_back(r, lid(i, j + 1), -ih2);
            }
        Eigen::SparseMatrix<double> A(mi * mj, mi * mj);
        A.setFromTriplets(trip.begin(), trip.end());
        ldlt_.compute(A);
        require(ldlt_.info() == Eigen::Success, "Poisson factorization failed");
    }

    const Grid2D& grid() const { return grid_; }

    ScalarField solve(const ScalarField& omega, PoissonSolveReport* rep = nullptr) const {
        require(omega.grid == grid_, "field grid does not match solver grid");
        detail::check_wall_trace(omega, trace_tol_);
        const int nx = grid_.nx(), ny = grid_.ny(), mi = nx - 2, mj = ny - 2;
        Eigen::MatrixXd rhs(mi * mj, 2);
        for (int j = 1; j <= mj; ++j)
            for (int i = 1; i <= mi; ++i) {
                const Complex v = omega.at(i, j);
                rhs((j - 1) * mi + (i - 1), 0) = v.real();
                rhs((j - 1) * mi + (i - 1), 1) = v.imag();
            }
        Eigen::MatrixXd sol = ldlt_.solve(rhs);

        ScalarField psi(grid_);
        for (int j = 1; j <= mj; ++j)
            for (int i = 1; i <= mi; ++i)
                psi.at(i, j) = Complex(sol((j - 1) * mi + (i - 1), 0), sol((j - 1) * mi + (i - 1), 1));

        finish_report(omega, psi, PoissonSolveReport::Kind::DirectSparse, rep);
        return psi;
    }

  private:
    void finish_report(const ScalarField& omega, const ScalarField& psi,
                       PoissonSolveReport::Kind kind, PoissonSolveReport* rep) const {
        // Interior residual of the 5-point operator against the RHS.
        const Grid2D& g = grid_;
        const double ih2 = 1.0 / (g.h * g.h);
        double rn = 0.0, bn = 0.0;
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) {
                const Complex lap = (psi.at(i + 1, j) + psi.at(i - 1, j) + psi.at(i, j + 1) +
                                     psi.at(i, j - 1) - 4.0 * psi.at(i, j)) *
                                    ih2;
                rn += std::norm(lap + omega.at(i, j));
                bn += std::norm(omega.at(i, j));
            }
        const double residual = bn > 0.0 ? std::sqrt(rn / bn) : std::sqrt(rn);
        if (rep) {
            rep->kind = kind;
            rep->residual = residual;
            rep->iterations = 0;
            rep->ok = residual <= residual_tol_;
            rep->truncation_warning = detail::support_near_outer_edge(omega);
        }
        if (bn > 0.0 && residual > residual_tol_)
            throw SolverDivergence("Poisson residual " + std::to_string(residual));
    }

    friend class FastSinePoisson;
    Grid2D grid_;
    double residual_tol_, trace_tol_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

// Sine-transform Poisson solve. The 5-point Dirichlet Laplacian is
// diagonal in the DST-I basis; FFTW's RODFT00 applied twice scales by
// 2(m+1) per dimension.
class FastSinePoisson {
  public:
    explicit FastSinePoisson(const Grid2D& g, double residual_tol = 1e-10,
                             double trace_tol = 1e-8)
        : grid_(g), residual_tol_(residual_tol), trace_tol_(trace_tol) {
        mi_ = g.nx() - 2;
        mj_ = g.ny() - 2;
        buf_ = fftw_alloc_real(static_cast<size_t>(mi_) * mj_);
        plan_ = fftw_plan_r2r_2d(mj_, mi_, buf_, buf_, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
        const double pi = std::acos(-1.0);
        lam1_.resize(mi_);
        lam2_.resize(mj_);
        const double ih2 = 1.0 / (g.h * g.h);
        for (int k = 0; k < mi_; ++k) {
            const double s = std::sin((k + 1) * pi / (2.0 * (mi_ + 1)));
            lam1_[k] = 4.0 * s * s * ih2;
        }
        for (int k = 0; k < mj_; ++k) {
            const double s = std::sin((k + 1) * pi / (2.0 * (mj_ + 1)));
            lam2_[k] = 4.0 * s * s * ih2;
        }
    }
    ~FastSinePoisson() {
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }
    FastSinePoisson(const FastSinePoisson&) = delete;
    FastSinePoisson& operator=(const FastSinePoisson&) = delete;

    const Grid2D& grid() const { return grid_; }

    ScalarField solve(const ScalarField& omega, PoissonSolveReport* rep = nullptr) const {
        require(omega.grid == grid_, "field grid does not match solver grid");
        detail::check_wall_trace(omega, trace_tol_);
        ScalarField psi(grid_);
        solve_part(omega, psi, /*imag=*/false);
        bool has_imag = false;
        for (int k = 0; k < omega.values.size() && !has_imag; ++k)
            has_imag = omega.values[k].imag() != 0.0;
        if (has_imag) solve_part(omega, psi, /*imag=*/true);

        // Residual reporting shares the direct path's definition.
        DirichletPoissonReportShim(omega, psi, rep);
        return psi;
    }

  private:
    void solve_part(const ScalarField& omega, ScalarField& psi, bool imag) const {
        const double scale = 1.0 / (4.0 * (mi_ + 1) * (mj_ + 1));
        for (int j = 0; j < mj_; ++j)
            for (int i = 0; i < mi_; ++i) {
                const Complex v = omega.at(i + 1, j + 1);
                buf_[j * mi_ + i] = imag ? v.imag() : v.real();
            }
        fftw_execute(plan_);
        for (int j = 0; j < mj_; ++j)
            for (int i = 0; i < mi_; ++i) buf_[j * mi_ + i] /= (lam1_[i] + lam2_[j]);
        fftw_execute(plan_);
        for (int j = 0; j < mj_; ++j)
            for (int i = 0; i < mi_; ++i) {
                Complex& p = psi.at(i + 1, j + 1);
                const double v = buf_[j * mi_ + i] * scale;
                p = imag ? Complex(p.real(), v) : Complex(v, p.imag());
            }
    }

    void DirichletPoissonReportShim(const ScalarField& omega, const ScalarField& psi,
                                    PoissonSolveReport* rep) const {
        const Grid2D& g = grid_;
        const double ih2 = 1.0 / (g.h * g.h);
        double rn = 0.0, bn = 0.0;
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) {
                const Complex lap = (psi.at(i + 1, j) + psi.at(i - 1, j) + psi.at(i, j + 1) +
                                     psi.at(i, j - 1) - 4.0 * psi.at(i, j)) *
                                    ih2;
                rn += std::norm(lap + omega.at(i, j));
                bn += std::norm(omega.at(i, j));
            }
        const double residual = bn > 0.0 ? std::sqrt(rn / bn) : std::sqrt(rn);
        if (rep) {
            rep->kind = PoissonSolveReport::Kind::FastSine;
            rep->residual = residual;
            rep->ok = residual <= residual_tol_;
            rep->truncation_warning = detail::support_near_outer_edge(omega);
        }
        if (bn > 0.0 && residual > residual_tol_)
            throw SolverDivergence("sine-transform Poisson residual " + std::to_string(residual));
    }

    Grid2D grid_;
    double residual_tol_, trace_tol_;
    int mi_ = 0, mj_ = 0;
    double* buf_ = nullptr;
    fftw_plan plan_;
    std::vector<double> lam1_, lam2_;
};

}  // namespace vorlab
