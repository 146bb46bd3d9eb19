// Mirrored base flow: a truncated radial vortex translated to (0,R) plus
// its wall image at (0,-R). U1 is even, U2 and Omega odd in xi2; the lower
// lobe is assigned from the upper one node-by-node, so the symmetries hold
// at machine precision.
#pragma once
#include "calculus.hpp"
#include "profile.hpp"

namespace vorlab {

struct MirroredFlow {
    RadialProfile profile;
    double R0 = 0.0;  // lobe radius
    double R = 0.0;   // lobe center distance from the wall
    Grid2D grid;      // whole-plane grid
    VectorField U;
    ScalarField Omega;
};

inline MirroredFlow build_mirrored(const RadialProfile& prof, double R0, double R, int n,
                                   double L = 0.0) {
    if (R <= R0) throw LobesOverlap("need R > R0, got R=" + std::to_string(R) +
                                    " R0=" + std::to_string(R0));
    if (prof.support_radius > R0 + 1e-12)
        throw BadParameter("profile support radius " + std::to_string(prof.support_radius) +
                           " exceeds lobe radius R0; truncate first");
    if (L <= 0.0) L = R + 3.0 * R0;  // default box: lobes and tails fit
    MirroredFlow m;
    m.profile = prof;
    m.R0 = R0;
    m.R = R;
    m.grid = make_grid(DomainKind::Whole, L, n);
    m.U = VectorField(m.grid);
    m.Omega = ScalarField(m.grid);

    const Grid2D& g = m.grid;
    const int wall = g.wall_row();
    for (int j = wall; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.xi1(i), yc = g.xi2(j) - R;
            const double r = std::hypot(x, yc);
            const double z = prof.zeta(r);
            // u = zeta(|xi_c|) xi_c^perp, xi_c^perp = (-xi_c2, xi_c1)
            const double u1 = -z * yc, u2 = z * x;
            const double w = prof.omega(r);
            m.U.c1.at(i, j) = u1;
            m.U.c2.at(i, j) = u2;
            m.Omega.at(i, j) = w;
            if (j > wall) {
                const int jm = g.mirror_row(j);
                m.U.c1.at(i, jm) = u1;
                m.U.c2.at(i, jm) = -u2;
                m.Omega.at(i, jm) = -w;
            }
        }
    // On the wall line the odd parts vanish identically (lobes are disjoint
    // from the wall), and U2, Omega are zeroed exactly by the odd mirror.
    for (int i = 0; i < g.nx(); ++i) {
        m.U.c2.at(i, wall) = 0.0;
        m.Omega.at(i, wall) = 0.0;
    }
    return m;
}

// Restriction of the mirrored flow to the half plane: U_E is the upper lobe
// velocity, Omega_E its vorticity. dist(supp U_E, wall) >= R - R0 > 0.
inline std::pair<VectorField, ScalarField> to_half_plane(const MirroredFlow& m) {
    ScalarField u1 = restrict_half(m.U.c1);
    ScalarField u2 = restrict_half(m.U.c2);
    ScalarField w = restrict_half(m.Omega);
    return {VectorField(std::move(u1), std::move(u2)), std::move(w)};
}

}  // namespace vorlab
