// Scalar and vector fields sampled on a Grid2D, plus the weighted L^2
// machinery. Values are complex throughout: eigenvectors of the
// nonsymmetric operators are complex and flow through the same field ops.
#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "grid.hpp"

namespace vorlab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

struct ScalarField {
    Grid2D grid;
    CVec values;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g) : grid(g), values(CVec::Zero(g.size())) {}
    ScalarField(const Grid2D& g, CVec v) : grid(g), values(std::move(v)) {
        require(values.size() == grid.size(), "value count must equal node count");
    }

    Complex& at(int i, int j) { return values[grid.idx(i, j)]; }
    Complex at(int i, int j) const { return values[grid.idx(i, j)]; }

    static ScalarField sample(const Grid2D& g, const std::function<Complex(double, double)>& f) {
        ScalarField out(g);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) out.at(i, j) = f(g.xi1(i), g.xi2(j));
        return out;
    }
    static ScalarField sample_real(const Grid2D& g, const std::function<double(double, double)>& f) {
        return sample(g, [&](double x, double y) { return Complex(f(x, y), 0.0); });
    }

    double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

struct VectorField {
    ScalarField c1, c2;

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : c1(g), c2(g) {}
    VectorField(ScalarField a, ScalarField b) : c1(std::move(a)), c2(std::move(b)) {
        require(c1.grid == c2.grid, "vector field components must share one grid");
    }
    const Grid2D& grid() const { return c1.grid; }
    double max_abs() const { return std::max(c1.max_abs(), c2.max_abs()); }
};

// ---------------------------------------------------------------------------
// Weights

enum class WeightKind : std::uint8_t { Unweighted = 0, GaussianRho = 1 };

struct Weight {
    WeightKind kind = WeightKind::Unweighted;
    // rho(xi) = exp(|xi|^2/8), optionally capped. The default ceiling e^32
    // leaves |xi| <= 16 uncapped.
    bool capped = true;
    double cap = std::exp(32.0);

    static Weight unweighted() { return {WeightKind::Unweighted, true, 1.0}; }
    static Weight gaussian_rho(bool capped = true, double cap = std::exp(32.0)) {
        return {WeightKind::GaussianRho, capped, cap};
    }

    double operator()(double x1, double x2) const {
        if (kind == WeightKind::Unweighted) return 1.0;
        const double e = (x1 * x1 + x2 * x2) / 8.0;
        if (!capped && e > 350.0)
            throw WeightOverflow("uncapped gaussian weight overflows on this box; enable the cap");
        const double r = std::exp(e);
        return capped ? std::min(r, cap) : r;
    }
};

// Uncapped rho, used where the analytic similarity transform needs the true
// weight (operator assembly on moderate boxes).
inline double rho_exact(double x1, double x2) {
    const double e = (x1 * x1 + x2 * x2) / 8.0;
    if (e > 350.0) throw WeightOverflow("rho overflows on this box");
    return std::exp(e);
}

// ---------------------------------------------------------------------------
// Norms and inner products: discrete L^2 with cell weight h^2, i.e.
// ||f|| = (sum_i w(xi_i)^2 |f_i|^2 h^2)^{1/2}.

inline Complex inner(const ScalarField& f, const ScalarField& g, const Weight& w = Weight::unweighted()) {
    require(f.grid == g.grid, "inner product needs a common grid");
    const Grid2D& gr = f.grid;
    Complex s = 0.0;
    for (int j = 0; j < gr.ny(); ++j)
        for (int i = 0; i < gr.nx(); ++i) {
            const double ww = w(gr.xi1(i), gr.xi2(j));
            s += ww * ww * f.at(i, j) * std::conj(g.at(i, j));
        }
    return s * (gr.h * gr.h);
}

inline double norm(const ScalarField& f, const Weight& w = Weight::unweighted()) {
    const Grid2D& gr = f.grid;
    double s = 0.0;
    for (int j = 0; j < gr.ny(); ++j)
        for (int i = 0; i < gr.nx(); ++i) {
            const double ww = w(gr.xi1(i), gr.xi2(j));
            s += ww * ww * std::norm(f.at(i, j));
        }
    return std::sqrt(s) * gr.h;
}

inline double norm(const VectorField& v, const Weight& w = Weight::unweighted()) {
    const double a = norm(v.c1, w), b = norm(v.c2, w);
    return std::sqrt(a * a + b * b);
}

// ---------------------------------------------------------------------------
// Odd reflection bridge between half-plane and whole-plane representations.

// Odd extension across xi2 = 0. Requires (near-)zero wall trace; the
// extension is exactly antisymmetric at mirrored node pairs.
inline ScalarField odd_extend(const ScalarField& f, double trace_tol = 1e-10) {
    const Grid2D& g = f.grid;
    require(g.kind == DomainKind::Half, "odd_extend expects a half-plane field");
    double wall = 0.0;
    for (int i = 0; i < g.nx(); ++i) wall = std::max(wall, std::abs(f.at(i, 0)));
    if (wall > trace_tol)
        throw NonzeroTrace("wall trace " + std::to_string(wall) + " exceeds tolerance");

    Grid2D wg = whole_of(g);
    ScalarField out(wg);
    const int wall_j = wg.wall_row();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const Complex v = f.at(i, j);
            out.at(i, wall_j + j) = v;
            out.at(i, wall_j - j) = -v;
        }
    for (int i = 0; i < wg.nx(); ++i) out.at(i, wall_j) = 0.0;
    return out;
}

inline ScalarField restrict_half(const ScalarField& f) {
    const Grid2D& g = f.grid;
    require(g.kind == DomainKind::Whole, "restrict_half expects a whole-plane field");
    Grid2D hg = upper_half_of(g);
    ScalarField out(hg);
    const int wall_j = g.wall_row();
    for (int j = 0; j < hg.ny(); ++j)
        for (int i = 0; i < hg.nx(); ++i) out.at(i, j) = f.at(i, wall_j + j);
    return out;
}

// Even/odd extension of a half-plane velocity: U1 even, U2 odd in xi2.
inline VectorField extend_velocity(const VectorField& v) {
    const Grid2D& g = v.grid();
    require(g.kind == DomainKind::Half, "extend_velocity expects a half-plane field");
    Grid2D wg = whole_of(g);
    VectorField out(wg);
    const int wall_j = wg.wall_row();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            out.c1.at(i, wall_j + j) = v.c1.at(i, j);
            out.c1.at(i, wall_j - j) = v.c1.at(i, j);
            out.c2.at(i, wall_j + j) = v.c2.at(i, j);
            out.c2.at(i, wall_j - j) = -v.c2.at(i, j);
        }
    return out;
}

}  // namespace vorlab
