// Kernel-sum Biot-Savart evaluation: the free-space kernel on the whole
// plane and the image kernel on the half plane (method of images,
// G(xi,eta) = (1/2pi)[log|xi-eta*| - log|xi-eta|], eta* = (eta1,-eta2)).
// Grid functions are treated as point vortices of strength h^2 w_j with the
// singular self term dropped. Unlike the box-Dirichlet solvers these carry
// no outer-boundary truncation, which matters for cross-lobe coupling and
// for operator assembly.
#pragma once
#include <array>

#include "field.hpp"

namespace vorlab {

struct Point {
    double x, y;
};

// perp(a) = (-a2, a1)
inline std::array<double, 2> kernel_whole(double dx, double dy) {
    const double r2 = dx * dx + dy * dy;
    if (r2 == 0.0) return {0.0, 0.0};
    return {-dy / r2, dx / r2};
}

// Velocity induced at `at` by vorticity w (whole-plane kernel).
inline std::array<Complex, 2> kernel_velocity_whole(const ScalarField& w, const Point& at) {
    const Grid2D& g = w.grid;
    const double c = g.h * g.h / (2.0 * std::acos(-1.0));
    Complex v1 = 0.0, v2 = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        const double y = g.xi2(j);
        for (int i = 0; i < g.nx(); ++i) {
            const Complex wv = w.at(i, j);
            if (wv == 0.0) continue;
            const auto k = kernel_whole(at.x - g.xi1(i), at.y - y);
            v1 += k[0] * wv;
            v2 += k[1] * wv;
        }
    }
    return {c * v1, c * v2};
}

// Velocity induced at `at` by half-plane vorticity w via the image kernel.
inline std::array<Complex, 2> kernel_velocity_half(const ScalarField& w, const Point& at) {
    const Grid2D& g = w.grid;
    require(g.kind == DomainKind::Half, "image kernel expects a half-plane field");
    const double c = g.h * g.h / (2.0 * std::acos(-1.0));
    Complex v1 = 0.0, v2 = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        const double y = g.xi2(j);
        for (int i = 0; i < g.nx(); ++i) {
            const Complex wv = w.at(i, j);
            if (wv == 0.0) continue;
            const auto k = kernel_whole(at.x - g.xi1(i), at.y - y);
            const auto km = kernel_whole(at.x - g.xi1(i), at.y + y);
            v1 += (k[0] - km[0]) * wv;
            v2 += (k[1] - km[1]) * wv;
        }
    }
    return {c * v1, c * v2};
}

// Streamfunction of the image kernel (quadrature oracle for the Dirichlet
// Poisson solve); valid away from the support of w.
inline Complex image_kernel_streamfunction(const ScalarField& w, const Point& at) {
    const Grid2D& g = w.grid;
    require(g.kind == DomainKind::Half, "image kernel expects a half-plane field");
    const double c = g.h * g.h / (2.0 * std::acos(-1.0));
    Complex s = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        const double y = g.xi2(j);
        for (int i = 0; i < g.nx(); ++i) {
            const Complex wv = w.at(i, j);
            if (wv == 0.0) continue;
            const double dx = at.x - g.xi1(i);
            const double dm = dx * dx + (at.y + y) * (at.y + y);
            const double dp = dx * dx + (at.y - y) * (at.y - y);
            if (dp == 0.0) continue;
            s += 0.5 * std::log(dm / dp) * wv;
        }
    }
    return c * s;
}

}  // namespace vorlab
