// Discretized linear operators over an active DOF set. The matrix is kept
// as a sparse local part (stencil terms) plus a dense coupling block whose
// rows live on a small mask (the nonlocal Biot-Savart terms have rows only
// on supp grad(Omega)). Metadata records the inner-product weight, boundary
// condition and assembly recipe.
#pragma once
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fstream>

#include "field.hpp"
#include "io.hpp"
#include "kernels.hpp"

namespace vorlab {

struct DomainRestriction {
    Grid2D grid;
    std::vector<int> nodes;     // global node ids, ascending
    std::vector<int> local_of;  // global -> local index or -1

    int size() const { return static_cast<int>(nodes.size()); }

    static DomainRestriction from_mask(const Grid2D& g, const std::vector<bool>& mask) {
        DomainRestriction r;
        r.grid = g;
        r.local_of.assign(g.size(), -1);
        for (int k = 0; k < g.size(); ++k)
            if (mask[k]) {
                r.local_of[k] = static_cast<int>(r.nodes.size());
                r.nodes.push_back(k);
            }
        require(!r.nodes.empty(), "empty domain restriction");
        return r;
    }

    // All grid-interior nodes (Dirichlet data lives on the excluded edges).
    static DomainRestriction full_interior(const Grid2D& g) {
        std::vector<bool> mask(g.size(), false);
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) mask[g.idx(i, j)] = true;
        return from_mask(g, mask);
    }

    // Union of discs, intersected with the grid interior.
    static DomainRestriction discs(const Grid2D& g, const std::vector<Point>& centers,
                                   double radius) {
        std::vector<bool> mask(g.size(), false);
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i)
                for (const auto& c : centers)
                    if (std::hypot(g.xi1(i) - c.x, g.xi2(j) - c.y) <= radius)
                        mask[g.idx(i, j)] = true;
        return from_mask(g, mask);
    }

    bool contains(int global) const { return local_of[global] >= 0; }
};

struct OperatorMatrix {
    DomainRestriction dofs;
    Eigen::SparseMatrix<double> local;  // N x N
    Eigen::MatrixXd coupling;           // kr x N dense block
    std::vector<int> coupling_rows;     // local row indices of the block
    Vec row_weight;                     // similarity weights (empty = identity)
    WeightKind weight = WeightKind::Unweighted;
    std::string bc;
    std::string provenance;

    int size() const { return dofs.size(); }

    CVec apply(const CVec& x) const {
        CVec y = local.cast<Complex>() * x;
        if (coupling.rows() > 0) {
            CVec add = coupling.cast<Complex>() * x;
            for (int q = 0; q < coupling.rows(); ++q) y[coupling_rows[q]] += add[q];
        }
        return y;
    }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd A = Eigen::MatrixXd(local);
        for (int q = 0; q < coupling.rows(); ++q) A.row(coupling_rows[q]) += coupling.row(q);
        return A;
    }

    // Undo the similarity transform: A_orig = D^{-1} A D.
    Eigen::MatrixXd to_dense_unweighted() const {
        Eigen::MatrixXd A = to_dense();
        if (row_weight.size() == 0) return A;
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j) A(i, j) *= row_weight[j] / row_weight[i];
        return A;
    }

    // Sparse triplet text export: row, col, re, im per line.
    void export_triplets(const std::string& path) const {
        std::ofstream os(path);
        require(os.good(), "cannot open " + path);
        os << "# " << provenance << "\n";
        for (int k = 0; k < local.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(local, k); it; ++it)
                os << it.row() << ' ' << it.col() << ' ' << fmt_double(it.value()) << " 0\n";
        for (int q = 0; q < coupling.rows(); ++q)
            for (int j = 0; j < coupling.cols(); ++j)
                if (coupling(q, j) != 0.0)
                    os << coupling_rows[q] << ' ' << j << ' ' << fmt_double(coupling(q, j))
                       << " 0\n";
    }

    // Matrix sums on a shared DOF set (used by the lobe decomposition).
    OperatorMatrix operator+(const OperatorMatrix& o) const {
        require(dofs.nodes == o.dofs.nodes, "operator sum needs identical DOF sets");
        OperatorMatrix out = *this;
        out.local = local + o.local;
        // merge coupling blocks
        std::vector<int> rows = coupling_rows;
        for (int r : o.coupling_rows)
            if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
        std::sort(rows.begin(), rows.end());
        Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(rows.size(), size());
        auto pos = [&](int r) {
            return std::lower_bound(rows.begin(), rows.end(), r) - rows.begin();
        };
        for (size_t q = 0; q < coupling_rows.size(); ++q)
            blk.row(pos(coupling_rows[q])) += coupling.row(q);
        for (size_t q = 0; q < o.coupling_rows.size(); ++q)
            blk.row(pos(o.coupling_rows[q])) += o.coupling.row(q);
        out.coupling = std::move(blk);
        out.coupling_rows = std::move(rows);
        return out;
    }
};

// Scatter a restricted coefficient vector back to a grid field.
inline ScalarField to_field(const DomainRestriction& r, const CVec& x) {
    ScalarField f(r.grid);
    for (int q = 0; q < r.size(); ++q) f.values[r.nodes[q]] = x[q];
    return f;
}

inline CVec to_coeffs(const DomainRestriction& r, const ScalarField& f) {
    require(f.grid == r.grid, "field grid does not match restriction");
    CVec x(r.size());
    for (int q = 0; q < r.size(); ++q) x[q] = f.values[r.nodes[q]];
    return x;
}

}  // namespace vorlab
