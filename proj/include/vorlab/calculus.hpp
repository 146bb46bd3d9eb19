// Discrete calculus: 2nd-order centered stencils in the interior and
// one-sided 2nd-order stencils on the box edges.
#pragma once
#include "field.hpp"

namespace vorlab {

namespace detail {

// d/dx along one index with the other fixed; dir = 0 for xi1, 1 for xi2.
inline Complex d1(const ScalarField& f, int i, int j, int dir) {
    const Grid2D& g = f.grid;
    const double h = g.h;
    const int k = dir == 0 ? i : j;
    const int kmax = (dir == 0 ? g.nx() : g.ny()) - 1;
    auto v = [&](int kk) { return dir == 0 ? f.at(kk, j) : f.at(i, kk); };
    if (k == 0) return (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h);
    if (k == kmax) return (3.0 * v(kmax) - 4.0 * v(kmax - 1) + v(kmax - 2)) / (2.0 * h);
    return (v(k + 1) - v(k - 1)) / (2.0 * h);
}

inline Complex d2(const ScalarField& f, int i, int j, int dir) {
    const Grid2D& g = f.grid;
    const double h2 = g.h * g.h;
    const int k = dir == 0 ? i : j;
    const int kmax = (dir == 0 ? g.nx() : g.ny()) - 1;
    auto v = [&](int kk) { return dir == 0 ? f.at(kk, j) : f.at(i, kk); };
    if (k == 0) return (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / h2;
    if (k == kmax) return (2.0 * v(kmax) - 5.0 * v(kmax - 1) + 4.0 * v(kmax - 2) - v(kmax - 3)) / h2;
    return (v(k + 1) - 2.0 * v(k) + v(k - 1)) / h2;
}

}  // namespace detail

inline ScalarField dx1(const ScalarField& f) {
    ScalarField out(f.grid);
    for (int j = 0; j < f.grid.ny(); ++j)
        for (int i = 0; i < f.grid.nx(); ++i) out.at(i, j) = detail::d1(f, i, j, 0);
    return out;
}

inline ScalarField dx2(const ScalarField& f) {
    ScalarField out(f.grid);
    for (int j = 0; j < f.grid.ny(); ++j)
        for (int i = 0; i < f.grid.nx(); ++i) out.at(i, j) = detail::d1(f, i, j, 1);
    return out;
}

inline VectorField grad(const ScalarField& f) { return {dx1(f), dx2(f)}; }

// grad_perp psi = (d2 psi, -d1 psi); rot(grad_perp psi) = -laplacian(psi).
inline VectorField grad_perp(const ScalarField& f) {
    VectorField out(f.grid);
    out.c1 = dx2(f);
    out.c2 = dx1(f);
    out.c2.values = -out.c2.values;
    return out;
}

inline ScalarField divergence(const VectorField& v) {
    ScalarField out(v.grid());
    ScalarField a = dx1(v.c1), b = dx2(v.c2);
    out.values = a.values + b.values;
    return out;
}

// rot v = d1 v2 - d2 v1.
inline ScalarField rot(const VectorField& v) {
    ScalarField out(v.grid());
    ScalarField a = dx1(v.c2), b = dx2(v.c1);
    out.values = a.values - b.values;
    return out;
}

inline ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.grid);
    for (int j = 0; j < f.grid.ny(); ++j)
        for (int i = 0; i < f.grid.nx(); ++i)
            out.at(i, j) = detail::d2(f, i, j, 0) + detail::d2(f, i, j, 1);
    return out;
}

// v . grad f pointwise.
inline ScalarField advect(const VectorField& v, const ScalarField& f) {
    require(v.grid() == f.grid, "advect needs a common grid");
    ScalarField out(f.grid);
    ScalarField fx = dx1(f), fy = dx2(f);
    for (int k = 0; k < f.values.size(); ++k)
        out.values[k] = v.c1.values[k] * fx.values[k] + v.c2.values[k] * fy.values[k];
    return out;
}

// One-sided 2nd-order normal derivative of psi on the wall row, the trace
// stencil used for slip traces: (-3 psi0 + 4 psi1 - psi2)/(2h) at xi2 = 0.
inline CVec wall_normal_derivative(const ScalarField& psi) {
    const Grid2D& g = psi.grid;
    require(g.kind == DomainKind::Half, "wall trace expects a half-plane field");
    CVec out(g.nx());
    for (int i = 0; i < g.nx(); ++i)
        out[i] = (-3.0 * psi.at(i, 0) + 4.0 * psi.at(i, 1) - psi.at(i, 2)) / (2.0 * g.h);
    return out;
}

}  // namespace vorlab
