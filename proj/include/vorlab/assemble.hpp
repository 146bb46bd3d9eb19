// Assembly of the discretized linear operators: transport T (conservative
// form), the nonlocal perturbation S, the half-plane operator built from
// them, the mirrored-pair operator with its lobe decomposition, and the
// viscous operator in the Gaussian-weighted space (assembled in similarity
// variables w = rho*omega, which makes the self-adjoint part symmetric).
#pragma once
#include "calculus.hpp"
#include "mirrored.hpp"
#include "operator_matrix.hpp"

namespace vorlab {

// T omega = -div(U omega), centered conservative stencil. Columns outside
// the restriction are dropped; for the operators built here U vanishes at
// the mask edge, so nothing is lost.
inline OperatorMatrix assemble_transport(const VectorField& U, const DomainRestriction& R) {
    require(U.grid() == R.grid, "velocity grid does not match restriction");
    const Grid2D& g = R.grid;
    const double c = 1.0 / (2.0 * g.h);
    OperatorMatrix A;
    A.dofs = R;
    A.bc = "dirichlet";
    A.provenance = "transport(conservative)";
    std::vector<Eigen::Triplet<double>> trip;
    for (int q = 0; q < R.size(); ++q) {
        const int gl = R.nodes[q];
        const int i = gl % g.nx(), j = gl / g.nx();
        require(g.interior(i, j), "transport rows must be grid-interior");
        auto add = [&](int ii, int jj, double coeff) {
            const int lj = R.local_of[g.idx(ii, jj)];
            if (lj >= 0 && coeff != 0.0) trip.emplace_back(q, lj, coeff);
        };
        add(i + 1, j, -c * U.c1.at(i + 1, j).real());
        add(i - 1, j, c * U.c1.at(i - 1, j).real());
        add(i, j + 1, -c * U.c2.at(i, j + 1).real());
        add(i, j - 1, c * U.c2.at(i, j - 1).real());
    }
    A.local.resize(R.size(), R.size());
    A.local.setFromTriplets(trip.begin(), trip.end());
    return A;
}

namespace detail {

// Dense block of S omega = -K[omega].grad(Omega): rows on supp grad(Omega),
// columns over the whole DOF set, via the free-space kernel (whole plane)
// or the image kernel (half plane). Kernel sums carry no outer-box
// truncation, which keeps cross-lobe coupling faithful.
inline void perturbation_block(const ScalarField& Omega, const DomainRestriction& R,
                               bool half_kernel, Eigen::MatrixXd& block,
                               std::vector<int>& rows) {
    const Grid2D& g = R.grid;
    ScalarField gx = dx1(Omega), gy = dx2(Omega);
    rows.clear();
    for (int q = 0; q < R.size(); ++q) {
        const int gl = R.nodes[q];
        if (gx.values[gl] != 0.0 || gy.values[gl] != 0.0) rows.push_back(q);
    }
    const int kr = static_cast<int>(rows.size());
    block = Eigen::MatrixXd::Zero(kr, R.size());
    const double c = g.h * g.h / (2.0 * std::acos(-1.0));
    for (int col = 0; col < R.size(); ++col) {
        const int gj = R.nodes[col];
        const double xj = g.xi1(gj % g.nx()), yj = g.xi2(gj / g.nx());
        for (int q = 0; q < kr; ++q) {
            const int gl = R.nodes[rows[q]];
            const double x = g.xi1(gl % g.nx()), y = g.xi2(gl / g.nx());
            double v1 = 0.0, v2 = 0.0;
            const double dx = x - xj, dy = y - yj;
            const double r2 = dx * dx + dy * dy;
            if (r2 > 0.0) {
                v1 = -dy / r2;
                v2 = dx / r2;
            }
            if (half_kernel) {
                const double dym = y + yj;
                const double rm2 = dx * dx + dym * dym;
                v1 += dym / rm2;
                v2 -= dx / rm2;
            }
            block(q, col) -= c * (v1 * gx.values[gl].real() + v2 * gy.values[gl].real());
        }
    }
}

inline void check_restriction_covers(const DomainRestriction& R, const VectorField& U,
                                     const ScalarField& Omega) {
    const Grid2D& g = R.grid;
    ScalarField gx = dx1(Omega), gy = dx2(Omega);
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) {
            const int gl = g.idx(i, j);
            const bool active = U.c1.values[gl] != 0.0 || U.c2.values[gl] != 0.0 ||
                                gx.values[gl] != 0.0 || gy.values[gl] != 0.0;
            if (!active) continue;
            for (int d = 0; d < 5; ++d) {
                static const int di[5] = {0, 1, -1, 0, 0}, dj[5] = {0, 0, 0, 1, -1};
                if (!R.contains(g.idx(i + di[d], j + dj[d])))
                    throw RestrictionTooSmall(
                        "mask must cover supp(U) and supp(grad Omega) plus one stencil width");
            }
        }
}

}  // namespace detail

inline OperatorMatrix assemble_perturbation(const ScalarField& Omega, const DomainRestriction& R,
                                            bool half_kernel) {
    OperatorMatrix S;
    S.dofs = R;
    S.bc = "dirichlet";
    S.provenance = half_kernel ? "perturbation(image-kernel)" : "perturbation(free-kernel)";
    S.local.resize(R.size(), R.size());
    detail::perturbation_block(Omega, R, half_kernel, S.coupling, S.coupling_rows);
    return S;
}

// Half-plane linearized operator around (U_E, Omega_E) on the compact mask.
inline OperatorMatrix assemble_lambda_E(const VectorField& UE, const ScalarField& OmegaE,
                                        const DomainRestriction& R) {
    require(R.grid.kind == DomainKind::Half, "lambda_E lives on the half plane");
    detail::check_restriction_covers(R, UE, OmegaE);
    OperatorMatrix A = assemble_transport(UE, R) + assemble_perturbation(OmegaE, R, true);
    A.provenance = "lambda_E";
    return A;
}

// Mirrored-pair operator on the two-disc DOF set, with the exact
// decomposition full = plus + minus + remainder. plus/minus act
// lobe-locally; the remainder carries only cross-lobe coupling.
struct LambdaERParts {
    OperatorMatrix full, plus, minus, remainder;
    std::vector<bool> in_upper;  // per local DOF
};

inline LambdaERParts assemble_lambda_ER(const MirroredFlow& m, double pad = -1.0) {
    const Grid2D& g = m.grid;
    if (pad < 0.0) pad = 4.0 * g.h;
    if (m.R <= m.R0) throw LobesOverlap("mirrored lobes overlap");
    DomainRestriction R =
        DomainRestriction::discs(g, {{0.0, m.R}, {0.0, -m.R}}, m.R0 + pad);

    LambdaERParts parts;
    parts.in_upper.resize(R.size());
    for (int q = 0; q < R.size(); ++q)
        parts.in_upper[q] = g.xi2(R.nodes[q] / g.nx()) > 0.0;

    // Transport acts lobe-locally (disjoint supports); split rows by lobe.
    OperatorMatrix T = assemble_transport(m.U, R);
    auto empty_like = [&](const char* tag) {
        OperatorMatrix O;
        O.dofs = R;
        O.bc = "dirichlet";
        O.provenance = tag;
        O.local.resize(R.size(), R.size());
        return O;
    };
    parts.plus = empty_like("lambda_ER.plus");
    parts.minus = empty_like("lambda_ER.minus");
    parts.remainder = empty_like("lambda_ER.remainder");
    {
        std::vector<Eigen::Triplet<double>> up, lo;
        for (int k = 0; k < T.local.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(T.local, k); it; ++it)
                (parts.in_upper[it.row()] ? up : lo).emplace_back(it.row(), it.col(), it.value());
        parts.plus.local.setFromTriplets(up.begin(), up.end());
        parts.minus.local.setFromTriplets(lo.begin(), lo.end());
    }

    // Perturbation: same-lobe entries go to plus/minus, cross-lobe entries
    // to the remainder.
    Eigen::MatrixXd block;
    std::vector<int> rows;
    detail::perturbation_block(m.Omega, R, false, block, rows);
    const int kr = static_cast<int>(rows.size());
    Eigen::MatrixXd b_uu = Eigen::MatrixXd::Zero(kr, R.size());
    Eigen::MatrixXd b_ll = Eigen::MatrixXd::Zero(kr, R.size());
    Eigen::MatrixXd b_cross = Eigen::MatrixXd::Zero(kr, R.size());
    for (int q = 0; q < kr; ++q) {
        const bool row_up = parts.in_upper[rows[q]];
        for (int col = 0; col < R.size(); ++col) {
            const double v = block(q, col);
            if (v == 0.0) continue;
            if (parts.in_upper[col] == row_up)
                (row_up ? b_uu : b_ll)(q, col) = v;
            else
                b_cross(q, col) = v;
        }
    }
    parts.plus.coupling = std::move(b_uu);
    parts.plus.coupling_rows = rows;
    parts.minus.coupling = std::move(b_ll);
    parts.minus.coupling_rows = rows;
    parts.remainder.coupling = std::move(b_cross);
    parts.remainder.coupling_rows = rows;

    parts.full = parts.plus + parts.minus + parts.remainder;
    parts.full.provenance = "lambda_ER.full";
    return parts;
}

// Reduce the mirrored operator to the odd subspace, parameterized by the
// upper-lobe DOFs: x_lower = -x at the mirrored node. Returns the dense
// reduced matrix and the upper-lobe local DOF indices.
inline std::pair<Eigen::MatrixXd, std::vector<int>> dense_odd_reduction(
    const LambdaERParts& parts) {
    const DomainRestriction& R = parts.full.dofs;
    const Grid2D& g = R.grid;
    std::vector<int> upper;
    for (int q = 0; q < R.size(); ++q)
        if (parts.in_upper[q]) upper.push_back(q);
    // local index of the mirrored DOF for each lower DOF
    std::vector<int> upper_pos(R.size(), -1);
    for (size_t k = 0; k < upper.size(); ++k) upper_pos[upper[k]] = static_cast<int>(k);

    Eigen::MatrixXd A = parts.full.to_dense();
    const int nu = static_cast<int>(upper.size());
    Eigen::MatrixXd Ao = Eigen::MatrixXd::Zero(nu, nu);
    for (int r = 0; r < nu; ++r)
        for (int c = 0; c < R.size(); ++c) {
            const double v = A(upper[r], c);
            if (v == 0.0) continue;
            if (parts.in_upper[c]) {
                Ao(r, upper_pos[c]) += v;
            } else {
                const int gl = R.nodes[c];
                const int gi = gl % g.nx(), gj = gl / g.nx();
                const int gm = g.idx(gi, g.mirror_row(gj));
                const int lm = R.local_of[gm];
                require(lm >= 0 && upper_pos[lm] >= 0, "mirror DOF missing from mask");
                Ao(r, upper_pos[lm]) -= v;
            }
        }
    return {std::move(Ao), std::move(upper)};
}

// Conjugated viscous operator rho H rho^{-1} = lap - |xi|^2/16 + 1/2 on the
// Dirichlet interior; symmetric by construction.
inline OperatorMatrix assemble_conjugated_viscous(const DomainRestriction& R) {
    const Grid2D& g = R.grid;
    OperatorMatrix A;
    A.dofs = R;
    A.bc = "dirichlet";
    A.weight = WeightKind::GaussianRho;
    A.provenance = "viscous(conjugated)";
    const double ih2 = 1.0 / (g.h * g.h);
    std::vector<Eigen::Triplet<double>> trip;
    for (int q = 0; q < R.size(); ++q) {
        const int gl = R.nodes[q];
        const int i = gl % g.nx(), j = gl / g.nx();
        const double x = g.xi1(i), y = g.xi2(j);
        trip.emplace_back(q, q, -4.0 * ih2 - (x * x + y * y) / 16.0 + 0.5);
        auto add = [&](int ii, int jj) {
            const int lj = R.local_of[g.idx(ii, jj)];
            if (lj >= 0) trip.emplace_back(q, lj, ih2);
        };
        add(i + 1, j);
        add(i - 1, j);
        add(i, j + 1);
        add(i, j - 1);
    }
    A.local.resize(R.size(), R.size());
    A.local.setFromTriplets(trip.begin(), trip.end());
    return A;
}

// M_alpha = (1/alpha)(lap + xi/2.grad + 1) + lambda_E on the half plane with
// Dirichlet vorticity, assembled in the similarity variables w = rho omega.
// row_weight holds rho on the DOFs so solutions can be mapped back.
inline OperatorMatrix assemble_M_alpha(const VectorField& UE, const ScalarField& OmegaE,
                                       double alpha, const DomainRestriction& R) {
    require(R.grid.kind == DomainKind::Half, "M_alpha lives on the half plane");
    require(alpha >= 1.0, "alpha must be >= 1");
    const Grid2D& g = R.grid;

    Vec rho(R.size());
    for (int q = 0; q < R.size(); ++q) {
        const int gl = R.nodes[q];
        rho[q] = rho_exact(g.xi1(gl % g.nx()), g.xi2(gl / g.nx()));
    }

    OperatorMatrix A = assemble_conjugated_viscous(R);
    A.local *= 1.0 / alpha;

    OperatorMatrix T = assemble_transport(UE, R);
    {  // conjugate: That_ij = rho_i T_ij / rho_j
        std::vector<Eigen::Triplet<double>> trip;
        for (int k = 0; k < T.local.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(T.local, k); it; ++it)
                trip.emplace_back(it.row(), it.col(),
                                  it.value() * rho[it.row()] / rho[it.col()]);
        Eigen::SparseMatrix<double> That(R.size(), R.size());
        That.setFromTriplets(trip.begin(), trip.end());
        A.local += That;
    }

    OperatorMatrix S = assemble_perturbation(OmegaE, R, true);
    for (int q = 0; q < S.coupling.rows(); ++q)
        for (int c = 0; c < S.coupling.cols(); ++c)
            S.coupling(q, c) *= rho[S.coupling_rows[q]] / rho[c];
    A.coupling = std::move(S.coupling);
    A.coupling_rows = std::move(S.coupling_rows);
    A.row_weight = std::move(rho);
    A.provenance = "M_alpha(alpha=" + std::to_string(alpha) + ")";
    return A;
}

// Quadratic-form check for the weighted drift-diffusion operator on the
// whole plane: for mean-zero w,
//   Re<-H w, w>_rho >= (1/8)||grad w||_rho^2 + (1/128)||xi w||_rho^2
//                      + (3/16)||w||_rho^2.
struct HarmonicBound {
    double lhs = 0.0, rhs = 0.0;
    bool holds(double slack = 0.05) const { return lhs >= (1.0 - slack) * rhs; }
};

inline HarmonicBound harmonic_bound_check(const ScalarField& w) {
    require(w.grid.kind == DomainKind::Whole, "harmonic bound lives on the whole plane");
    const Grid2D& g = w.grid;
    const Weight rho = Weight::gaussian_rho();
    ScalarField wx = dx1(w), wy = dx2(w), lap = laplacian(w);
    ScalarField Hw(g), xiw1(g), xiw2(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.xi1(i), y = g.xi2(j);
            const int k = g.idx(i, j);
            Hw.values[k] = lap.values[k] + 0.5 * (x * wx.values[k] + y * wy.values[k]) +
                           w.values[k];
            xiw1.values[k] = x * w.values[k];
            xiw2.values[k] = y * w.values[k];
        }
    HarmonicBound out;
    out.lhs = -inner(Hw, w, rho).real();
    const double gn1 = norm(wx, rho), gn2 = norm(wy, rho);
    const double xn1 = norm(xiw1, rho), xn2 = norm(xiw2, rho);
    const double wn = norm(w, rho);
    out.rhs = (gn1 * gn1 + gn2 * gn2) / 8.0 + (xn1 * xn1 + xn2 * xn2) / 128.0 +
              3.0 * wn * wn / 16.0;
    return out;
}

}  // namespace vorlab
