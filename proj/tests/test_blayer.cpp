#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vorlab/assemble.hpp"
#include "vorlab/blayer.hpp"
#include "vorlab/sweeps.hpp"

using namespace vorlab;

TEST_CASE("z_norm: zero, homogeneity, analytic oracle") {
    BoundaryData z = BoundaryData::from_function(8.0, 801, [](double) { return 0.0; });
    CHECK(z_norm(z) == 0.0);

    BoundaryData h = BoundaryData::from_function(8.0, 1601, [](double x) { return std::exp(-x * x); });
    BoundaryData h2 = h;
    h2.h *= 2.0;
    CHECK(z_norm(h2) == Catch::Approx(2.0 * z_norm(h)).epsilon(1e-14));

    // analytic oracle: d^j exp(-x^2) = (-1)^j H_j(x) exp(-x^2) with the
    // physicists' Hermite polynomials; integrals by Simpson quadrature.
    auto hermite = [](int j, double x) {
        double h0 = 1.0, h1v = 2.0 * x;
        if (j == 0) return h0;
        for (int k = 1; k < j; ++k) {
            const double h2v = 2.0 * x * h1v - 2.0 * k * h0;
            h0 = h1v;
            h1v = h2v;
        }
        return h1v;
    };
    auto simpson_sq = [&](const std::function<double(double)>& f) {
        const int m = 4000;
        const double a = -8.0, b = 8.0, dd = (b - a) / m;
        double s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double x0 = a + k * dd, x1 = x0 + dd, xm = x0 + 0.5 * dd;
            s += (f(x0) * f(x0) + 4.0 * f(xm) * f(xm) + f(x1) * f(x1)) * dd / 6.0;
        }
        return s;
    };
    double w52 = 0.0;
    for (int j = 0; j <= 5; ++j)
        w52 += simpson_sq([&](double x) { return hermite(j, x) * std::exp(-x * x); });
    double weighted = 0.0;
    for (int l = 1; l <= 2; ++l)
        weighted += std::sqrt(
            simpson_sq([&](double x) { return x * hermite(l, x) * std::exp(-x * x); }));
    const double oracle = std::sqrt(w52) + weighted;
    CHECK(z_norm(h) == Catch::Approx(oracle).epsilon(1e-3));
}

TEST_CASE("corrector closed form matches the defining integral") {
    // int_0^Xi (1 - eta) e^{-eta} d eta = Xi e^{-Xi}, checked by quadrature
    auto quad = [](double Xi) {
        const int m = 2000;
        const double dd = Xi / m;
        double s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double a = k * dd, b = a + dd, c = a + 0.5 * dd;
            auto f = [](double e) { return (1.0 - e) * std::exp(-e); };
            s += (f(a) + 4.0 * f(c) + f(b)) * dd / 6.0;
        }
        return s;
    };
    for (double Xi : {0.3, 1.0, 2.5, 6.0, 12.0})
        CHECK(quad(Xi) == Catch::Approx(Xi * std::exp(-Xi)).margin(1e-10));
    // zero total integral: the layer carries no net flux and J2 decays
    CHECK(std::abs(quad(40.0)) < 1e-9);
}

TEST_CASE("corrector on a grid: exact wall data, zero on zero input") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    BoundaryData h = BoundaryData::from_function(8.0, 129, [](double x) { return std::exp(-x * x); });
    VectorField J = corrector_J(h, 16.0, g);
    for (int i = 0; i < g.nx(); ++i) {
        REQUIRE(J.c1.at(i, 0) == h.h[i]);
        REQUIRE(J.c2.at(i, 0) == 0.0);
    }
    BoundaryData z = BoundaryData::from_function(8.0, 129, [](double) { return 0.0; });
    CHECK(corrector_J(z, 16.0, g).max_abs() == 0.0);
}

TEST_CASE("corrector divergence is pure differencing error") {
    // alpha small enough that the 2D grid resolves the layer
    Grid2D g = make_grid(DomainKind::Half, 8.0, 257);
    const double alpha = 4.0;
    REQUIRE(g.h <= 1.0 / (std::sqrt(alpha) * 4.0));
    BoundaryData h = BoundaryData::from_function(8.0, 257, [](double x) { return std::exp(-x * x); });
    VectorField J = corrector_J(h, alpha, g);
    ScalarField d = divergence(J);
    double mx = 0.0;
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) mx = std::max(mx, std::abs(d.at(i, j)));
    // scale: third-derivative bound on both terms
    const double B = h.deriv(3).cwiseAbs().maxCoeff() + 3.0 * alpha * h.deriv(1).cwiseAbs().maxCoeff();
    CHECK(mx <= 10.0 * g.h * g.h * B);
}

TEST_CASE("corrector scaling exponents") {
    BoundaryData h = BoundaryData::from_function(8.0, 801, [](double x) { return std::exp(-x * x); });
    CorrectorReport rep = corrector_scaling(h, {1e2, 1e3, 1e4, 1e5});
    CHECK(rep.slope_J == Catch::Approx(-0.25).margin(0.05));
    CHECK(rep.slope_gradJ == Catch::Approx(0.25).margin(0.05));
    CHECK(rep.slope_grad2J == Catch::Approx(0.75).margin(0.05));
    // corrector smallness constant ||J|| alpha^{1/4} / ||h||_Z is stable
    for (const auto& row : rep.rows) {
        CHECK(row.smallness_const == Catch::Approx(rep.rows[0].smallness_const).epsilon(0.05));
        CHECK(row.wall_err1 == 0.0);
        CHECK(row.wall_err2 == 0.0);
        CHECK(row.max_div <= row.div_bound);
    }
}

TEST_CASE("under-resolved layer is refused") {
    BoundaryData h = BoundaryData::from_function(8.0, 101, [](double x) { return std::exp(-x * x); });
    CHECK_THROWS_AS(corrector_scaling(h, {1e2, 1e3, 1e4, 1e5}, 8, 100), LayerUnderResolved);
}

TEST_CASE("slip trace: zero source and uniformity over the contour and alpha") {
    RadialProfile p =
        truncate(make_profile("ring", {{"amp", 1.0}, {"scale", 1.0}, {"steep", 4.0}}), 2.0);
    MirroredFlow m = build_mirrored(p, 2.0, 4.0, 49, 10.0);
    auto [UE, OmegaE] = to_half_plane(m);
    const Grid2D& g = UE.grid();
    DomainRestriction full = DomainRestriction::full_interior(g);
    DomainRestriction mask = DomainRestriction::discs(g, {{0.0, 4.0}}, 2.0 + 4.0 * g.h);
    DirichletPoisson poisson(g);

    OperatorMatrix lamE = assemble_lambda_E(UE, OmegaE, mask);
    SpectrumResult spec = eig(lamE);
    Complex lamE_star = select_isolated(spec, {}, 0.02);
    const double eps = 0.05 * std::abs(lamE_star);

    auto gen = tutil::rng(123);
    ScalarField gfield = tutil::random_bumps(g, gen, 2, 0.2, 3.0);
    ScalarField gm(g);
    for (int q = 0; q < mask.size(); ++q) gm.values[mask.nodes[q]] = gfield.values[mask.nodes[q]];

    SECTION("zero source gives zero trace") {
        OperatorMatrix M = assemble_M_alpha(UE, OmegaE, 200.0, full);
        SlipTraceReport rep = slip_trace(ScalarField(g), lamE_star + 4.0 * eps, M, poisson);
        CHECK(rep.znorm == 0.0);
    }

    SECTION("ratio varies less than 2x across contour nodes and alpha doubling") {
        std::vector<double> ratios;
        for (double alpha : {200.0, 400.0, 800.0}) {
            OperatorMatrix M = assemble_M_alpha(UE, OmegaE, alpha, full);
            for (int q = 0; q < 3; ++q) {
                const double th = 2.0 * std::acos(-1.0) * q / 3.0;
                const Complex lam = lamE_star + eps * std::exp(Complex(0.0, th));
                ratios.push_back(slip_trace(gm, lam, M, poisson).ratio);
            }
        }
        const double lo = *std::min_element(ratios.begin(), ratios.end());
        const double hi = *std::max_element(ratios.begin(), ratios.end());
        CHECK(hi / lo < 2.0);
    }
}
