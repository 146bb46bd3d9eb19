#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vorlab/calculus.hpp"
#include "vorlab/mirrored.hpp"
#include "vorlab/profile.hpp"

using namespace vorlab;

TEST_CASE("gauss profile vorticity matches 2 zeta + r zeta'") {
    RadialProfile p = make_profile("gauss", {{"amp", 1.0}, {"scale", 1.0}});
    for (double r = 0.0; r < 5.0; r += 0.17) {
        const double expect = (2.0 - 2.0 * r * r) * std::exp(-r * r);
        CHECK(p.omega(r) == Catch::Approx(expect).margin(1e-12));
    }
    // independent check of the closed form by differencing zeta
    for (double r = 0.3; r < 5.0; r += 0.17) {
        const double d = 1e-5;
        const double zp = (p.zeta(r + d) - p.zeta(r - d)) / (2.0 * d);
        CHECK(p.omega(r) == Catch::Approx(2.0 * p.zeta(r) + r * zp).margin(1e-6));
    }
}

TEST_CASE("zero profile gives zero vorticity; bad parameters rejected") {
    RadialProfile z = make_profile("ring", {{"amp", 0.0}});
    CHECK(z.omega(0.7) == 0.0);
    CHECK_THROWS_AS(make_profile("gauss", {{"scale", -1.0}}), BadParameter);
    CHECK_THROWS_AS(make_profile("ring", {{"steep", 1.0}}), BadParameter);
    CHECK_THROWS_AS(make_profile("nope", {}), BadParameter);
}

TEST_CASE("total circulation of the truncated vorticity is zero") {
    for (const char* fam : {"gauss", "ring", "poly"}) {
        RadialProfile p = truncate(make_profile(fam, {{"amp", 1.0}, {"scale", 0.8}}), 2.0);
        CHECK(std::abs(circulation(p)) < 1e-10);
    }
}

TEST_CASE("truncation is the identity when the support already fits") {
    RadialProfile p = make_profile("poly", {{"amp", 1.0}, {"scale", 0.9}});
    RadialProfile t = truncate(p, 2.0);  // support 0.9 < Rt/2
    for (double r = 0.0; r < 3.0; r += 0.13) {
        CHECK(t.zeta(r) == Catch::Approx(p.zeta(r)).margin(1e-15));
        CHECK(t.omega(r) == Catch::Approx(p.omega(r)).margin(1e-15));
    }
}

TEST_CASE("truncation leaves r <= Rt/2 untouched and kills r >= Rt") {
    RadialProfile p = make_profile("gauss", {{"amp", 1.0}, {"scale", 1.0}});
    const double Rt = 2.0;
    RadialProfile t = truncate(p, Rt);
    for (double r = 0.0; r <= Rt / 2.0 + 1e-9; r += 0.1) {
        CHECK(t.omega(r) == Catch::Approx(p.omega(r)).margin(1e-15));
        CHECK(t.zeta(r) == Catch::Approx(p.zeta(r)).margin(1e-15));
    }
    for (double r = Rt; r < 2.0 * Rt; r += 0.1) {
        CHECK(t.zeta(r) == 0.0);
        CHECK(t.omega(r) == 0.0);
    }
}

TEST_CASE("discrete curl of the truncated velocity matches the analytic vorticity") {
    RadialProfile t = truncate(make_profile("gauss", {{"amp", 1.0}, {"scale", 1.0}}), 2.0);
    auto run = [&](int n) {
        Grid2D g = make_grid(DomainKind::Whole, 4.0, n);
        VectorField u(g);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                const double x = g.xi1(i), y = g.xi2(j);
                const double z = t.zeta(std::hypot(x, y));
                u.c1.at(i, j) = -z * y;
                u.c2.at(i, j) = z * x;
            }
        ScalarField w = rot(u);
        double num = 0.0, den = 0.0;
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) {
                const double expect = t.omega(std::hypot(g.xi1(i), g.xi2(j)));
                num += std::norm(w.at(i, j) - expect);
                den += expect * expect;
            }
        return std::sqrt(num / den);
    };
    const double e65 = run(65), e129 = run(129);
    CHECK(e129 < 2e-2);
    CHECK(e65 / e129 == Catch::Approx(4.0).margin(1.5));
}

TEST_CASE("mirrored flow: symmetries, support, norms") {
    RadialProfile t = truncate(make_profile("gauss", {{"amp", 1.0}, {"scale", 0.8}}), 2.0);
    const double R0 = 2.0, R = 5.0;
    MirroredFlow m = build_mirrored(t, R0, R, 129);
    const Grid2D& g = m.grid;

    SECTION("odd/even symmetry holds exactly at mirrored node pairs") {
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); i += 2) {
                const int jm = g.mirror_row(j);
                REQUIRE(m.U.c1.at(i, j) == m.U.c1.at(i, jm));
                REQUIRE(m.U.c2.at(i, j) == -m.U.c2.at(i, jm));
                REQUIRE(m.Omega.at(i, j) == -m.Omega.at(i, jm));
            }
    }

    SECTION("Omega vanishes on the wall line") {
        for (int i = 0; i < g.nx(); ++i) CHECK(m.Omega.at(i, g.wall_row()) == 0.0);
    }

    SECTION("support is confined to the two lobes") {
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                const double x = g.xi1(i), y = g.xi2(j);
                const double dup = std::hypot(x, y - R), dlo = std::hypot(x, y + R);
                if (std::min(dup, dlo) > R0)
                    REQUIRE(std::abs(m.Omega.at(i, j)) < 1e-12);
            }
    }

    SECTION("whole-plane norm is sqrt(2) times one lobe") {
        ScalarField upper = restrict_half(m.Omega);
        CHECK(norm(m.Omega) == Catch::Approx(std::sqrt(2.0) * norm(upper)).epsilon(1e-10));
    }

    SECTION("overlapping lobes are rejected") {
        CHECK_THROWS_AS(build_mirrored(t, 2.0, 1.5, 65), LobesOverlap);
    }

    SECTION("untruncated profile is rejected") {
        RadialProfile raw = make_profile("gauss", {{"amp", 1.0}, {"scale", 0.8}});
        CHECK_THROWS_AS(build_mirrored(raw, 2.0, 5.0, 65), BadParameter);
    }
}

TEST_CASE("half-plane restriction of the mirrored flow") {
    RadialProfile t = truncate(make_profile("ring", {{"amp", 1.0}, {"scale", 0.9}}), 2.0);
    MirroredFlow m = build_mirrored(t, 2.0, 5.0, 129);
    auto [UE, OmegaE] = to_half_plane(m);
    const Grid2D& g = UE.grid();

    SECTION("discrete curl of U_E reproduces Omega_E") {
        ScalarField w = rot(UE);
        double num = 0.0, den = 0.0;
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) {
                num += std::norm(w.at(i, j) - OmegaE.at(i, j));
                den += std::norm(OmegaE.at(i, j));
            }
        CHECK(std::sqrt(num / den) < 20.0 * g.h * g.h);
    }

    SECTION("normal velocity vanishes on the wall") {
        for (int i = 0; i < g.nx(); ++i) CHECK(UE.c2.at(i, 0) == 0.0);
    }

    SECTION("odd extension of Omega_E is the mirrored Omega bit-exactly") {
        ScalarField ext = odd_extend(OmegaE);
        REQUIRE(ext.values == m.Omega.values);
    }

    SECTION("steady transport surrogate: U_E . grad Omega_E = O(h^2)") {
        ScalarField adv = advect(UE, OmegaE);
        const double scale = UE.max_abs() * OmegaE.max_abs() / t.support_radius;
        double mx = 0.0;
        for (int j = 1; j < g.ny() - 1; ++j)
            for (int i = 1; i < g.nx() - 1; ++i) mx = std::max(mx, std::abs(adv.at(i, j)));
        CHECK(mx < 20.0 * g.h * g.h * scale);
    }
}
