// Uniform Cartesian grids on the half-plane box [-L,L]x[0,L] or the
// whole-plane box [-L,L]^2. Node coordinates are exact functions of (L,n)
// so geometry is reproducible bit-for-bit. n is the node count along xi1;
// n odd keeps the xi=0 lines on the lattice.
#pragma once
#include <cmath>
#include <cstdint>

#include "errors.hpp"

namespace vorlab {

enum class DomainKind : std::uint8_t { Half = 0, Whole = 1 };

struct Grid2D {
    DomainKind kind = DomainKind::Half;
    double L = 0.0;
    int n = 0;  // nodes along xi1
    double h = 0.0;

    int nx() const { return n; }
    int ny() const { return kind == DomainKind::Half ? (n + 1) / 2 : n; }
    int size() const { return nx() * ny(); }

    double xi1(int i) const { return -L + i * h; }
    double xi2(int j) const { return kind == DomainKind::Half ? j * h : -L + j * h; }

    int idx(int i, int j) const { return j * nx() + i; }
    int wall_row() const { return kind == DomainKind::Half ? 0 : (n - 1) / 2; }
    // Row index of the node mirrored across xi2 = 0 (whole-plane grids).
    int mirror_row(int j) const { return n - 1 - j; }

    bool interior(int i, int j) const { return i > 0 && i < nx() - 1 && j > 0 && j < ny() - 1; }

    bool operator==(const Grid2D& o) const {
        return kind == o.kind && L == o.L && n == o.n;
    }
};

inline Grid2D make_grid(DomainKind kind, double L, int n) {
    if (L <= 0.0) throw BadParameter("grid half-width must be positive");
    if (n % 2 == 0) throw EvenNodeCount("node count must be odd, got " + std::to_string(n));
    if (n < 17) throw BadParameter("node count must be >= 17, got " + std::to_string(n));
    Grid2D g;
    g.kind = kind;
    g.L = L;
    g.n = n;
    g.h = 2.0 * L / (n - 1);
    return g;
}

// Half-plane grid sharing L, n (hence exactly the node set xi2 >= 0) of a
// whole-plane grid.
inline Grid2D upper_half_of(const Grid2D& whole) {
    require(whole.kind == DomainKind::Whole, "upper_half_of expects a whole-plane grid");
    return make_grid(DomainKind::Half, whole.L, whole.n);
}

inline Grid2D whole_of(const Grid2D& half) {
    require(half.kind == DomainKind::Half, "whole_of expects a half-plane grid");
    return make_grid(DomainKind::Whole, half.L, half.n);
}

}  // namespace vorlab
