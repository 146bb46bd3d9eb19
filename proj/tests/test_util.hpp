// Shared test helpers: seeded RNG and smooth random bump fields.
#pragma once
#include <random>

#include "vorlab/field.hpp"

namespace tutil {

using vorlab::Complex;
using vorlab::Grid2D;
using vorlab::ScalarField;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Sum of a few Gaussian bumps with centers inside |xi| <= box_frac * L and
// widths no smaller than a few cells, so the field is grid-resolved and
// effectively compactly supported.
inline ScalarField random_bumps(const Grid2D& g, std::mt19937_64& gen, int nbumps = 3,
                                double box_frac = 0.4, double min_xi2 = 0.0) {
    // Width bounds are h-independent so identical seeds give identical
    // fields across grid refinements.
    std::uniform_real_distribution<double> uc(-box_frac * g.L, box_frac * g.L);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::uniform_real_distribution<double> uw(0.5, 1.0);
    struct Bump {
        double x, y, a, w;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < nbumps; ++k) {
        double cy = uc(gen);
        if (g.kind == vorlab::DomainKind::Half || min_xi2 > 0.0)
            cy = std::abs(cy) + std::max(min_xi2, 0.15 * g.L);
        bumps.push_back({uc(gen), cy, ua(gen), uw(gen)});
    }
    return ScalarField::sample_real(g, [bumps](double x, double y) {
        double s = 0.0;
        for (const auto& b : bumps) {
            const double r2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
            s += b.a * std::exp(-r2 / (b.w * b.w));
        }
        return s;
    });
}

// Odd-in-xi2 variant on a whole-plane grid (exact antisymmetry at nodes).
inline ScalarField random_odd_bumps(const Grid2D& g, std::mt19937_64& gen, int nbumps = 3) {
    ScalarField base = random_bumps(g, gen, nbumps, 0.35, 0.05 * g.L);
    ScalarField out(g);
    const int wall = g.wall_row();
    for (int j = wall + 1; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const Complex v = base.at(i, j);
            out.at(i, j) = v;
            out.at(i, g.mirror_row(j)) = -v;
        }
    return out;
}

}  // namespace tutil
