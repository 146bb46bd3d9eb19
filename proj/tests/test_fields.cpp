#include <catch2/catch_amalgamated.hpp>
#include <cstdio>

#include "test_util.hpp"
#include "vorlab/calculus.hpp"
#include "vorlab/field.hpp"
#include "vorlab/io.hpp"

using namespace vorlab;

TEST_CASE("make_grid basic geometry") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    CHECK(g.h == Catch::Approx(0.125).epsilon(1e-15));
    CHECK(g.nx() == 129);
    CHECK(g.ny() == 65);
    CHECK(g.xi2(0) == 0.0);
    CHECK(g.xi1(64) == 0.0);

    Grid2D w = make_grid(DomainKind::Whole, 8.0, 129);
    CHECK(w.size() == 129 * 129);
    CHECK(w.xi2(w.wall_row()) == 0.0);

    CHECK_THROWS_AS(make_grid(DomainKind::Half, 8.0, 128), EvenNodeCount);
    CHECK_THROWS_AS(make_grid(DomainKind::Half, -1.0, 129), BadParameter);
    CHECK_THROWS_AS(make_grid(DomainKind::Half, 8.0, 15), BadParameter);
}

TEST_CASE("norms: trivial cases") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 129);
    ScalarField z(g);
    CHECK(norm(z) == 0.0);

    ScalarField one_node(g);
    one_node.at(40, 20) = 1.0;
    CHECK(norm(one_node) == Catch::Approx(g.h).epsilon(1e-14));
}

// Independent oracle: refined-grid Riemann quadrature of the weighted
// integral, written without the field classes.
static double quad_oracle_weighted_sq(double L, int nfine) {
    const double h = 2.0 * L / (nfine - 1);
    double s = 0.0;
    for (int j = 0; j < nfine; ++j)
        for (int i = 0; i < nfine; ++i) {
            const double x = -L + i * h, y = -L + j * h;
            const double r2 = x * x + y * y;
            s += std::exp(r2 / 4.0) * std::exp(-2.0 * r2);
        }
    return s * h * h;
}

TEST_CASE("weighted norm matches refined-grid quadrature") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 129);
    ScalarField f = ScalarField::sample_real(g, [](double x, double y) {
        return std::exp(-(x * x + y * y));
    });
    const double measured = norm(f, Weight::gaussian_rho());
    const double expected = std::sqrt(quad_oracle_weighted_sq(8.0, 1025));
    CHECK(measured == Catch::Approx(expected).epsilon(1e-3));
}

TEST_CASE("gaussian weight dominates the unweighted norm") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 65);
    auto gen = tutil::rng(7);
    for (int t = 0; t < 5; ++t) {
        ScalarField f = tutil::random_bumps(g, gen);
        CHECK(norm(f, Weight::gaussian_rho()) >= norm(f));
    }
}

TEST_CASE("weight overflow is signalled when uncapped") {
    Weight w = Weight::gaussian_rho(false);
    CHECK_THROWS_AS(w(60.0, 60.0), WeightOverflow);
}

TEST_CASE("rot of rigid rotation is 2") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 65);
    VectorField v(g);
    v.c1 = ScalarField::sample_real(g, [](double, double y) { return -y; });
    v.c2 = ScalarField::sample_real(g, [](double x, double) { return x; });
    ScalarField r = rot(v);
    for (int k = 0; k < r.values.size(); ++k)
        CHECK(std::abs(r.values[k] - Complex(2.0)) < 1e-11);
}

TEST_CASE("div of (x, -y) vanishes at interior nodes") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 65);
    VectorField v(g);
    v.c1 = ScalarField::sample_real(g, [](double x, double) { return x; });
    v.c2 = ScalarField::sample_real(g, [](double, double y) { return -y; });
    ScalarField d = divergence(v);
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) CHECK(std::abs(d.at(i, j)) < 1e-12);
}

TEST_CASE("laplacian eigenfunction") {
    const double L = 8.0;
    Grid2D g = make_grid(DomainKind::Whole, L, 129);
    const double pi = std::acos(-1.0);
    ScalarField f = ScalarField::sample_real(g, [&](double x, double y) {
        return std::sin(pi * x / L) * std::sin(pi * y / L);
    });
    ScalarField lap = laplacian(f);
    const double lam = -2.0 * (pi / L) * (pi / L);
    double num = 0.0, den = 0.0;
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) {
            num += std::norm(lap.at(i, j) - lam * f.at(i, j));
            den += std::norm(lam * f.at(i, j));
        }
    CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("rot(grad_perp psi) = -laplacian(psi) on smooth psi") {
    Grid2D g = make_grid(DomainKind::Whole, 8.0, 129);
    ScalarField psi = ScalarField::sample_real(g, [](double x, double y) {
        return std::exp(-(x * x + y * y));
    });
    ScalarField lhs = rot(grad_perp(psi));
    ScalarField rhs = laplacian(psi);
    double num = 0.0, den = 0.0;
    for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) {
            num += std::norm(lhs.at(i, j) + rhs.at(i, j));
            den += std::norm(rhs.at(i, j));
        }
    CHECK(std::sqrt(num / den) < 10.0 * g.h * g.h);
}

TEST_CASE("odd extension of an already-odd function") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    ScalarField f = ScalarField::sample_real(g, [](double x, double y) {
        return y * std::exp(-(x * x + y * y));
    });
    ScalarField ext = odd_extend(f);
    ScalarField direct = ScalarField::sample_real(ext.grid, [](double x, double y) {
        return y * std::exp(-(x * x + y * y));
    });
    CHECK((ext.values - direct.values).cwiseAbs().maxCoeff() < 1e-14);

    ScalarField z(g);
    CHECK(odd_extend(z).max_abs() == 0.0);
}

TEST_CASE("odd extension: antisymmetry and bit-exact round trip") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    auto gen = tutil::rng(21);
    for (int t = 0; t < 5; ++t) {
        ScalarField f = tutil::random_bumps(g, gen, 3, 0.4, 0.2);
        for (int i = 0; i < g.nx(); ++i) f.at(i, 0) = 0.0;
        ScalarField ext = odd_extend(f);
        const Grid2D& wg = ext.grid;
        for (int j = 0; j < wg.ny(); ++j)
            for (int i = 0; i < wg.nx(); ++i)
                REQUIRE(ext.at(i, j) == -ext.at(i, wg.mirror_row(j)));
        ScalarField back = restrict_half(ext);
        REQUIRE(back.values == f.values);  // bit-exact
    }
}

TEST_CASE("odd extension rejects nonzero trace") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 65);
    ScalarField f(g);
    f.at(10, 0) = 1e-3;
    CHECK_THROWS_AS(odd_extend(f), NonzeroTrace);
}

TEST_CASE("field serialization round trips bit-exactly") {
    Grid2D g = make_grid(DomainKind::Half, 8.0, 33);
    auto gen = tutil::rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(g);
    for (int k = 0; k < f.values.size(); ++k) f.values[k] = Complex(u(gen), u(gen));

    const std::string binp = "io_test_field.bin", csvp = "io_test_field.csv";
    save_field_bin(f, binp);
    ScalarField fb = load_field_bin(binp);
    REQUIRE(fb.grid == f.grid);
    REQUIRE(fb.values == f.values);

    save_field_csv(f, csvp);
    ScalarField fc = load_field_csv(csvp);
    REQUIRE(fc.grid == f.grid);
    REQUIRE(fc.values == f.values);
    std::remove(binp.c_str());
    std::remove(csvp.c_str());
}
