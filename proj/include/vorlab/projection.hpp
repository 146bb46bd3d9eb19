// Riesz spectral projection by trapezoid contour quadrature,
// P = (1/2 pi i) oint (lambda I - A)^{-1} d lambda over a circle;
// trapezoid is spectrally accurate there. Rank counts the singular values
// above 1e-6; the idempotency defect ||P^2 - P|| is reported.
#pragma once
#include "eig.hpp"

namespace vorlab {

struct ProjectionResult {
    Eigen::MatrixXcd P;
    int quad_nodes = 0;
    int rank = 0;
    Complex trace;
    double idempotency_defect = 0.0;
    std::vector<double> node_residuals;
    bool converged = false;   // set by the doubling study
    double delta_P = 0.0;     // ||P_{2N} - P_N|| in the doubling study
};

inline ProjectionResult spectral_projection(const OperatorMatrix& A, Complex center,
                                            double radius, int quad_nodes,
                                            const SpectrumResult* context = nullptr,
                                            double clearance_tol = 1e-6) {
    const int n = A.size();
    if (context) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : context->pairs)
            dmin = std::min(dmin, std::abs(std::abs(p.lambda - center) - radius));
        if (dmin <= clearance_tol)
            throw CircleHitsSpectrum("contour clearance " + std::to_string(dmin));
    }
    ProjectionResult out;
    out.quad_nodes = quad_nodes;
    out.P = Eigen::MatrixXcd::Zero(n, n);
    const double pi = std::acos(-1.0);
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    std::mt19937_64 gen(2);
    std::normal_distribution<double> nd;
    CVec probe(n);
    for (int i = 0; i < n; ++i) probe[i] = Complex(nd(gen), nd(gen));
    probe /= probe.norm();

    for (int q = 0; q < quad_nodes; ++q) {
        const double th = 2.0 * pi * (q + 0.5) / quad_nodes;
        const Complex lam = center + radius * std::exp(Complex(0.0, th));
        ShiftedSolver solver(A, lam);
        Eigen::MatrixXcd R(n, n);
        for (int c = 0; c < n; ++c) R.col(c) = solver.solve(I.col(c));
        out.P += (radius / quad_nodes) * std::exp(Complex(0.0, th)) * R;
        const CVec x = R * probe;
        out.node_residuals.push_back((lam * x - A.apply(x) - probe).norm());
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.P);
    out.rank = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > 1e-6) ++out.rank;
    out.trace = out.P.trace();
    out.idempotency_defect = (out.P * out.P - out.P).norm();
    return out;
}

// Double the node count until P stabilizes below delta_tol.
inline ProjectionResult projection_study(const OperatorMatrix& A, Complex center, double radius,
                                         int start_nodes = 32, double delta_tol = 1e-8,
                                         int max_doublings = 4,
                                         const SpectrumResult* context = nullptr) {
    ProjectionResult cur = spectral_projection(A, center, radius, start_nodes, context);
    for (int d = 0; d < max_doublings; ++d) {
        ProjectionResult next =
            spectral_projection(A, center, radius, cur.quad_nodes * 2, context);
        next.delta_P = (next.P - cur.P).norm();
        if (next.delta_P < delta_tol && next.rank == cur.rank) {
            next.converged = true;
            return next;
        }
        cur = std::move(next);
    }
    cur.converged = false;
    return cur;
}

}  // namespace vorlab
