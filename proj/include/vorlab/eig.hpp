// Eigenvalue machinery: dense LAPACK eigensolves (default at desk scale),
// shifted linear solves behind one interface (dense LU, or a sparse
// factorization with a Woodbury correction for the dense coupling rows),
// and shift-invert Arnoldi as the escape hatch for finer grids.
#pragma once
#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/SparseLU>
#include <algorithm>
#include <optional>
#include <random>

#include "operator_matrix.hpp"

namespace vorlab {

struct EigPair {
    Complex lambda;
    CVec vec;
    double residual = 0.0;
};

struct Disc {
    Complex center;
    double radius = 0.0;
    bool contains(Complex z) const { return std::abs(z - center) <= radius; }
};

struct SpectrumResult {
    std::vector<EigPair> pairs;
    std::optional<Disc> filter;
    double residual_tol = 1e-8;

    // Tie-break rule: minimal residual, then maximal real part.
    const EigPair* best() const {
        const EigPair* out = nullptr;
        for (const auto& p : pairs) {
            if (!out || p.residual < out->residual - 1e-14 ||
                (std::abs(p.residual - out->residual) <= 1e-14 &&
                 p.lambda.real() > out->lambda.real()))
                out = &p;
        }
        return out;
    }
    const EigPair* nearest(Complex z) const {
        const EigPair* out = nullptr;
        for (const auto& p : pairs)
            if (!out || std::abs(p.lambda - z) < std::abs(out->lambda - z)) out = &p;
        return out;
    }
};

struct DenseEig {
    CVec values;
    Eigen::MatrixXcd right;
    Eigen::MatrixXcd left;  // filled when requested
};

inline DenseEig dense_eig(Eigen::MatrixXd A, bool want_left = false) {
    const int n = static_cast<int>(A.rows());
    Vec wr(n), wi(n);
    Eigen::MatrixXd vr(n, n), vl(want_left ? n : 1, want_left ? n : 1);
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, A.data(), n,
                                   wr.data(), wi.data(), vl.data(), static_cast<int>(vl.rows()),
                                   vr.data(), n);
    require(info == 0, "dgeev failed with info " + std::to_string(info));
    DenseEig out;
    out.values.resize(n);
    out.right.resize(n, n);
    if (want_left) out.left.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = Complex(wr[j], wi[j]);
        if (wi[j] > 0.0) {
            out.right.col(j) = vr.col(j).cast<Complex>() + Complex(0, 1) * vr.col(j + 1).cast<Complex>();
            out.right.col(j + 1) = vr.col(j).cast<Complex>() - Complex(0, 1) * vr.col(j + 1).cast<Complex>();
            if (want_left) {
                out.left.col(j) = vl.col(j).cast<Complex>() + Complex(0, 1) * vl.col(j + 1).cast<Complex>();
                out.left.col(j + 1) = vl.col(j).cast<Complex>() - Complex(0, 1) * vl.col(j + 1).cast<Complex>();
            }
            out.values[j + 1] = Complex(wr[j + 1], wi[j + 1]);
            ++j;
        } else {
            out.right.col(j) = vr.col(j).cast<Complex>();
            if (want_left) out.left.col(j) = vl.col(j).cast<Complex>();
        }
    }
    return out;
}

inline DenseEig dense_eig(Eigen::MatrixXcd A, bool want_left = false) {
    const int n = static_cast<int>(A.rows());
    DenseEig out;
    out.values.resize(n);
    out.right.resize(n, n);
    if (want_left) out.left.resize(n, n);
    Eigen::MatrixXcd vl(want_left ? n : 1, want_left ? n : 1);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, A.data(), n,
                                   out.values.data(), vl.data(), static_cast<int>(vl.rows()),
                                   out.right.data(), n);
    require(info == 0, "zgeev failed with info " + std::to_string(info));
    if (want_left) out.left = vl;
    return out;
}

// ---------------------------------------------------------------------------
// Shifted solves: x with (lambda I - A) x = b.

class ShiftedSolver {
  public:
    ShiftedSolver(const OperatorMatrix& A, Complex lambda, int dense_limit = 2500)
        : A_(&A), lambda_(lambda) {
        const int n = A.size();
        const int kr = static_cast<int>(A.coupling_rows.size());
        dense_path_ = n <= dense_limit || kr * 4 > n;
        if (dense_path_) {
            Eigen::MatrixXcd M = (-A.to_dense()).cast<Complex>();
            M.diagonal().array() += lambda;
            dense_lu_.compute(M);
        } else {
            Eigen::SparseMatrix<Complex> W = (-A.local).cast<Complex>();
            Eigen::SparseMatrix<Complex> I(n, n);
            I.setIdentity();
            W += lambda * I;
            sparse_lu_.compute(W);
            require(sparse_lu_.info() == Eigen::Success, "shifted sparse factorization failed");
            // Woodbury data for (W - P C)^{-1}: columns M1 = W^{-1} P and
            // the small matrix I - C M1.
            M1_.resize(n, kr);
            Eigen::MatrixXcd small = Eigen::MatrixXcd::Identity(kr, kr);
            CVec e = CVec::Zero(n);
            for (int q = 0; q < kr; ++q) {
                e[A.coupling_rows[q]] = 1.0;
                M1_.col(q) = sparse_lu_.solve(e);
                e[A.coupling_rows[q]] = 0.0;
            }
            small -= A.coupling.cast<Complex>() * M1_;
            small_lu_.compute(small);
        }
    }

    CVec solve(const CVec& b) const {
        if (dense_path_) return dense_lu_.solve(b);
        CVec x0 = sparse_lu_.solve(b);
        CVec y = small_lu_.solve(A_->coupling.cast<Complex>() * x0);
        return x0 + M1_ * y;
    }

    Complex shift() const { return lambda_; }

  private:
    const OperatorMatrix* A_;
    Complex lambda_;
    bool dense_path_ = true;
    Eigen::PartialPivLU<Eigen::MatrixXcd> dense_lu_;
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> sparse_lu_;
    Eigen::MatrixXcd M1_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> small_lu_;
};

// Backward-error-checked resolvent application.
inline CVec resolvent_apply(const OperatorMatrix& A, Complex lambda, const CVec& g,
                            double tol = 1e-10, const ShiftedSolver* solver = nullptr,
                            const SpectrumResult* context = nullptr) {
    std::optional<ShiftedSolver> own;
    if (!solver) {
        own.emplace(A, lambda);
        solver = &*own;
    }
    CVec x = solver->solve(g);
    const double gn = g.norm();
    if (gn == 0.0) return CVec::Zero(A.size());
    CVec r = lambda * x - A.apply(x) - g;
    const double berr = r.norm() / gn;
    if (!(berr <= tol)) {  // catches NaN/Inf from exact singularity too
        std::string msg = "backward error " + std::to_string(berr);
        if (context) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const auto& p : context->pairs) dmin = std::min(dmin, std::abs(p.lambda - lambda));
            msg += "; distance to nearest Ritz value " + std::to_string(dmin);
        }
        throw NearSingular(msg);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Shift-invert Arnoldi around a target shift.

struct ArnoldiOptions {
    int krylov = 80;
    int want = 8;
    double residual_tol = 1e-8;
    std::uint64_t seed = 12345;
};

inline std::vector<EigPair> shift_invert_arnoldi(const OperatorMatrix& A, Complex sigma,
                                                 const ArnoldiOptions& opt = {}) {
    const int n = A.size();
    const int m = std::min(opt.krylov, n);
    ShiftedSolver solver(A, sigma);

    Eigen::MatrixXcd V(n, m + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    std::mt19937_64 gen(opt.seed);
    std::normal_distribution<double> nd;
    CVec v0(n);
    for (int i = 0; i < n; ++i) v0[i] = Complex(nd(gen), nd(gen));
    V.col(0) = v0 / v0.norm();

    int built = 0;
    for (int k = 0; k < m; ++k) {
        CVec w = solver.solve(V.col(k));
        for (int rep = 0; rep < 2; ++rep)  // modified Gram-Schmidt, twice
            for (int j = 0; j <= k; ++j) {
                const Complex hjk = V.col(j).dot(w);
                H(j, k) += hjk;
                w -= hjk * V.col(j);
            }
        const double nw = w.norm();
        H(k + 1, k) = nw;
        built = k + 1;
        if (nw < 1e-13) break;  // invariant subspace
        V.col(k + 1) = w / nw;
    }

    DenseEig ritz = dense_eig(Eigen::MatrixXcd(H.topLeftCorner(built, built)));
    // theta large <=> lambda = sigma - 1/theta close to sigma
    std::vector<int> order(ritz.values.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(ritz.values[a]) > std::abs(ritz.values[b]);
    });

    std::vector<EigPair> out;
    for (int idx : order) {
        if (static_cast<int>(out.size()) >= opt.want) break;
        const Complex theta = ritz.values[idx];
        if (std::abs(theta) < 1e-14) continue;
        EigPair p;
        p.lambda = sigma - 1.0 / theta;
        p.vec = V.leftCols(built) * ritz.right.col(idx);
        p.vec /= p.vec.norm();
        p.residual = (A.apply(p.vec) - p.lambda * p.vec).norm();
        if (p.residual <= opt.residual_tol) out.push_back(std::move(p));
    }
    if (out.empty())
        throw IterativeNoConvergence("no Ritz pair met the residual tolerance near shift");
    return out;
}

// ---------------------------------------------------------------------------
// Main entry: dense by default, shift-invert on request.

struct EigOptions {
    int dense_limit = 20000;
    double residual_tol = 1e-8;
    bool shift_invert = false;
    ArnoldiOptions arnoldi;
};

inline SpectrumResult eig(const OperatorMatrix& A, std::optional<Disc> filter = {},
                          const EigOptions& opt = {}) {
    SpectrumResult res;
    res.filter = filter;
    res.residual_tol = opt.residual_tol;

    if (opt.shift_invert) {
        require(filter.has_value(), "shift-invert needs a disc filter for the shift");
        ArnoldiOptions ao = opt.arnoldi;
        ao.residual_tol = opt.residual_tol;
        for (auto& p : shift_invert_arnoldi(A, filter->center, ao)) {
            if (filter->radius <= 0.0 || filter->contains(p.lambda)) res.pairs.push_back(std::move(p));
        }
        return res;
    }

    require(A.size() <= opt.dense_limit,
            "DOF count exceeds the dense limit; enable shift-invert");
    DenseEig d = dense_eig(A.to_dense());
    for (int j = 0; j < d.values.size(); ++j) {
        if (filter && filter->radius > 0.0 && !filter->contains(d.values[j])) continue;
        EigPair p;
        p.lambda = d.values[j];
        p.vec = d.right.col(j);
        const double vn = p.vec.norm();
        p.vec /= vn;
        p.residual = (A.apply(p.vec) - p.lambda * p.vec).norm();
        res.pairs.push_back(std::move(p));
    }
    return res;
}

// Isolation rule: the selected eigenvalue must keep every other Ritz value
// at distance >= max(4 * residual_tol, 2 * eps).
inline bool is_isolated(const SpectrumResult& all, Complex lambda, double eps,
                        double residual_tol = 1e-8) {
    const double need = std::max(4.0 * residual_tol, 2.0 * eps);
    for (const auto& p : all.pairs) {
        const double d = std::abs(p.lambda - lambda);
        if (d > 1e-12 && d < need) return false;
    }
    return true;
}

}  // namespace vorlab
