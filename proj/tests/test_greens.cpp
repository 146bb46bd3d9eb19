#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vorlab/biot_savart.hpp"
#include "vorlab/kernels.hpp"
#include "vorlab/poisson.hpp"

using namespace vorlab;

TEST_CASE("solve_dirichlet: zero in, zero out") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    DirichletPoisson solver(g);
    PoissonSolveReport rep;
    ScalarField psi = solver.solve(ScalarField(g), &rep);
    CHECK(psi.max_abs() == 0.0);
    CHECK(rep.ok);
}

// Manufactured solution psi* = xi2^3 (L-xi2)^3 sin(pi xi1/L) / L^6 with the
// analytic forcing w = -lap psi*. w vanishes on the wall.
namespace {
double psi_star(double x, double y, double L) {
    const double pi = std::acos(-1.0);
    return std::pow(y, 3) * std::pow(L - y, 3) * std::sin(pi * x / L) / std::pow(L, 6);
}
double w_star(double x, double y, double L) {
    const double pi = std::acos(-1.0);
    const double p = 6.0 * y * std::pow(L - y, 3) - 18.0 * y * y * (L - y) * (L - y) +
                     6.0 * std::pow(y, 3) * (L - y);
    const double lap = p * std::sin(pi * x / L) / std::pow(L, 6) -
                       (pi / L) * (pi / L) * psi_star(x, y, L);
    return -lap;
}
double manufactured_error(int n) {
    const double L = 8.0;
    Grid2D g = make_grid(DomainKind::Half, L, n);
    DirichletPoisson solver(g);
    ScalarField w = ScalarField::sample_real(g, [&](double x, double y) { return w_star(x, y, L); });
    ScalarField psi = solver.solve(w);
    ScalarField exact =
        ScalarField::sample_real(g, [&](double x, double y) { return psi_star(x, y, L); });
    ScalarField diff(g);
    diff.values = psi.values - exact.values;
    return norm(diff) / norm(exact);
}
}  // namespace

TEST_CASE("solve_dirichlet recovers a manufactured solution at 2nd order") {
    const double e65 = manufactured_error(65);
    const double e129 = manufactured_error(129);
    CHECK(e129 < 1e-3);
    // halving h divides the error by about 4
    CHECK(e65 / e129 == Catch::Approx(4.0).margin(1.2));
}

TEST_CASE("solve_dirichlet matches the image-kernel quadrature oracle") {
    // The oracle is the free half-plane kernel; a box twice the support
    // scale keeps the outer Dirichlet truncation below the tolerance.
    Grid2D g = make_grid(DomainKind::Half, 16.0, 257);
    DirichletPoisson solver(g);
    // Gaussian pair, odd in xi1, supported away from the wall.
    ScalarField w = ScalarField::sample_real(g, [](double x, double y) {
        const double a = std::exp(-((x - 0.5) * (x - 0.5) + (y - 3.0) * (y - 3.0)) * 4.0);
        const double b = std::exp(-((x + 0.5) * (x + 0.5) + (y - 3.0) * (y - 3.0)) * 4.0);
        return a - b;
    });
    ScalarField psi = solver.solve(w);
    // compare on nodes at distance >= 1 from the support blobs
    int checked = 0;
    for (int j = 1; j < g.ny() - 1; j += 6)
        for (int i = 1; i < g.nx() - 1; i += 6) {
            const double x = g.xi1(i), y = g.xi2(j);
            const double d1 = std::hypot(x - 0.5, y - 3.0), d2 = std::hypot(x + 0.5, y - 3.0);
            if (std::min(d1, d2) < 2.2) continue;
            if (std::hypot(x, y) > g.L / 2.0) continue;  // outer truncation zone
            const Complex oracle = image_kernel_streamfunction(w, {x, y});
            REQUIRE(std::abs(psi.at(i, j) - oracle) < 1e-3);
            ++checked;
        }
    CHECK(checked > 50);
}

TEST_CASE("tangency: v2 vanishes identically on the wall") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    DirichletPoisson solver(g);
    auto gen = tutil::rng(3);
    ScalarField w = tutil::random_bumps(g, gen, 3, 0.4, 0.5);
    for (int i = 0; i < g.nx(); ++i) w.at(i, 0) = 0.0;
    VectorField v = biot_savart_half(w, solver);
    for (int i = 0; i < g.nx(); ++i) CHECK(v.c2.at(i, 0) == 0.0);
}

TEST_CASE("image method equals odd extension") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    Grid2D wgrid = whole_of(g);
    DirichletPoisson hsolver(g), wsolver(wgrid);
    // single offset Gaussian vortex
    ScalarField w = ScalarField::sample_real(g, [](double x, double y) {
        return std::exp(-((x - 1.0) * (x - 1.0) + (y - 3.0) * (y - 3.0)) * 4.0);
    });
    for (int i = 0; i < g.nx(); ++i) w.at(i, 0) = 0.0;
    VectorField vh = biot_savart_half(w, hsolver);
    VectorField vw = biot_savart_whole(odd_extend(w), wsolver);
    ScalarField v1 = restrict_half(vw.c1), v2 = restrict_half(vw.c2);
    const double scale = std::max(vh.max_abs(), 1e-300);
    CHECK((vh.c1.values - v1.values).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((vh.c2.values - v2.values).cwiseAbs().maxCoeff() / scale < 1e-6);
}

TEST_CASE("whole-plane velocity of odd vorticity has even v1, odd v2") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 65);
    DirichletPoisson solver(g);
    auto gen = tutil::rng(11);
    ScalarField w = tutil::random_odd_bumps(g, gen);
    VectorField v = biot_savart_whole(w, solver);
    const double scale = std::max(v.max_abs(), 1e-300);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); i += 3) {
            const int jm = g.mirror_row(j);
            CHECK(std::abs(v.c1.at(i, j) - v.c1.at(i, jm)) < 1e-9 * scale);
            CHECK(std::abs(v.c2.at(i, j) + v.c2.at(i, jm)) < 1e-9 * scale);
        }
}

// 1D quadrature oracle for the azimuthal speed of a radial vorticity:
// v_theta(r) = (1/r) int_0^r s w(s) ds (Simpson rule).
namespace {
double vtheta_oracle(double r, const std::function<double(double)>& w) {
    if (r == 0.0) return 0.0;
    const int m = 2000;
    const double ds = r / m;
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
        const double a = k * ds, b = (k + 1) * ds, mid = 0.5 * (a + b);
        s += (a * w(a) + 4.0 * mid * w(mid) + b * w(b)) * ds / 6.0;
    }
    return s / r;
}
}  // namespace

TEST_CASE("radial vorticity gives the 1D azimuthal speed") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 257);
    DirichletPoisson solver(g);
    auto wfun = [](double r) { return (2.0 - 2.0 * r * r) * std::exp(-r * r); };
    ScalarField w = ScalarField::sample_real(
        g, [&](double x, double y) { return wfun(std::hypot(x, y)); });
    VectorField v = biot_savart_whole(w, solver);
    (void)v.max_abs();
    for (int j = 1; j < g.ny() - 1; j += 5)
        for (int i = 1; i < g.nx() - 1; i += 5) {
            const double r = std::hypot(g.xi1(i), g.xi2(j));
            if (r < 2.0 * g.h || r > 5.0) continue;
            const double speed = std::sqrt(std::norm(v.c1.at(i, j)) + std::norm(v.c2.at(i, j)));
            REQUIRE(std::abs(speed - std::abs(vtheta_oracle(r, wfun))) < 1e-3);
        }
}

TEST_CASE("direct sparse and sine-transform solves agree") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    DirichletPoisson direct(g);
    FastSinePoisson fast(g);
    auto gen = tutil::rng(17);
    for (int t = 0; t < 3; ++t) {
        ScalarField w = tutil::random_bumps(g, gen, 3, 0.4, 0.5);
        for (int i = 0; i < g.nx(); ++i) w.at(i, 0) = 0.0;
        PoissonSolveReport ra, rb;
        ScalarField pa = direct.solve(w, &ra);
        ScalarField pb = fast.solve(w, &rb);
        const double scale = std::max(pa.max_abs(), 1e-300);
        CHECK((pa.values - pb.values).cwiseAbs().maxCoeff() / scale < 1e-9);
        CHECK(rb.kind == PoissonSolveReport::Kind::FastSine);
    }
}

TEST_CASE("nonzero wall trace is rejected") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    DirichletPoisson solver(g);
    ScalarField w(g);
    w.at(10, 0) = 1.0;
    CHECK_THROWS_AS(solver.solve(w), NonzeroTrace);
}

TEST_CASE("truncation warning fires when support crowds the outer box") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    DirichletPoisson solver(g);
    ScalarField w = ScalarField::sample_real(g, [&](double x, double y) {
        return std::exp(-((x - 7.0) * (x - 7.0) + (y - 4.0) * (y - 4.0)) * 4.0);
    });
    for (int i = 0; i < g.nx(); ++i) w.at(i, 0) = 0.0;
    PoissonSolveReport rep;
    solver.solve(w, &rep);
    CHECK(rep.truncation_warning);
}

TEST_CASE("Biot-Savart inequality ratios") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    DirichletPoisson solver(g);

    SECTION("zero field reports NaN with flag") {
        BsInequalityReport rep = check_bs_inequalities(ScalarField(g), solver);
        CHECK_FALSE(rep.defined);
        CHECK(std::isnan(rep.r2));
    }

    SECTION("sharp gradient constant and refinement stability") {
        Grid2D gc = make_grid(DomainKind::Half, 8.0, 65);
        DirichletPoisson csolver(gc);
        for (int t = 0; t < 5; ++t) {
            auto gen2 = tutil::rng(100 + t);
            ScalarField w = tutil::random_bumps(g, gen2, 3, 0.35, 1.0);
            for (int i = 0; i < g.nx(); ++i) w.at(i, 0) = 0.0;
            BsInequalityReport rep = check_bs_inequalities(w, solver);
            CHECK(rep.r2 <= 1.05);

            auto gen3 = tutil::rng(100 + t);
            ScalarField wc = tutil::random_bumps(gc, gen3, 3, 0.35, 1.0);
            for (int i = 0; i < gc.nx(); ++i) wc.at(i, 0) = 0.0;
            BsInequalityReport repc = check_bs_inequalities(wc, csolver);
            CHECK(rep.r1 == Catch::Approx(repc.r1).epsilon(0.10));
            CHECK(rep.r3 == Catch::Approx(repc.r3).epsilon(0.10));
        }
    }
}
