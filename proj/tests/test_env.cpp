#include <stdexcept>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lpplab/ensemble.hpp"

using namespace lpplab;

TEST_CASE("grid construction and lookup") {
    const Grid g = make_grid(-1.0, 0.25, 9);
    CHECK(g.point(0) == -1.0);
    CHECK(g.point(8) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.cell_count() == 8);
    CHECK(g.nearest_index(-2.0) == 0);
    CHECK(g.nearest_index(0.13) == 5);
    CHECK(g.nearest_index(5.0) == 8);
    CHECK(g == make_grid(-1.0, 0.25, 9));

    CHECK_THROWS_AS(make_grid(0.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    bool same_ab = true, same_ac = true, same_ad = true;
    std::uint64_t last_a = 0, last_c = 0, last_d = 0;
    for (int i = 0; i < 64; ++i) {
        last_a = a.next_u64();
        last_c = c.next_u64();
        last_d = d.next_u64();
        same_ab = same_ab && last_a == b.next_u64();
        same_ac = same_ac && last_a == last_c;
        same_ad = same_ad && last_a == last_d;
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);

    RngStream u(11, 0);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.next_double();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("gaussian moments at fixed seed") {
    RngStream s(20250822, 1);
    const std::size_t n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = s.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    const double m = sum / static_cast<double>(n);
    const double v = sum2 / static_cast<double>(n) - m * m;
    CHECK(std::abs(m) < 0.02);
    CHECK(std::abs(v - 1.0) < 0.02);
}

TEST_CASE("brownian rows: anchoring, determinism, increment variance") {
    const Grid g = make_grid(0.0, 0.01, 100001);
    const RngSpec spec{20250822, 5};
    const std::vector<double> row = sample_brownian_row(g, 4.0, spec, 0);
    REQUIRE(row.size() == g.n_points);
    CHECK(row[0] == 0.0);
    CHECK(row == sample_brownian_row(g, 4.0, spec, 0));

    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 1; i < row.size(); ++i) {
        const double inc = row[i] - row[i - 1];
        sum += inc;
        sum2 += inc * inc;
    }
    const double n = static_cast<double>(row.size() - 1);
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(var == doctest::Approx(4.0 * 0.01).epsilon(0.02));
}

TEST_CASE("ensemble rows equal streamed rows bit for bit") {
    const Grid g = make_grid(-0.5, 0.05, 64);
    const RngSpec spec{99, 7};
    const LineEnsemble env = sample_brownian_lines(g, 5, 2.5, spec);
    REQUIRE(env.line_count() == 5);
    for (std::size_t r = 0; r < 5; ++r)
        CHECK(env.lines[r] == sample_brownian_row(g, 2.5, spec, r));

    CHECK_THROWS_AS(sample_brownian_lines(g, 0, 1.0, spec), std::invalid_argument);
    CHECK_THROWS_AS(sample_brownian_lines(g, 2, 0.0, spec), std::invalid_argument);
}

TEST_CASE("distinct streams are uncorrelated in practice") {
    const Grid g = make_grid(0.0, 1.0, 100001);
    const std::vector<double> a = sample_brownian_row(g, 1.0, RngSpec{123, 0}, 0);
    const std::vector<double> b = sample_brownian_row(g, 1.0, RngSpec{123, 1}, 0);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 1; i < g.n_points; ++i) {
        const double da = a[i] - a[i - 1], db = b[i] - b[i - 1];
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.01);
}

TEST_CASE("fixtures") {
    const LineEnsemble e2 = fixture_ensemble("E2");
    CHECK(e2.grid == make_grid(0.0, 0.5, 3));
    CHECK(e2.lines == std::vector<std::vector<double>>{{0, 1, 1}, {0, -1, 2}});

    const Grid g = make_grid(2.0, 0.5, 5);
    const LineEnsemble lin = fixture_ensemble("linear", g, 3);
    REQUIRE(lin.line_count() == 3);
    for (std::size_t i = 0; i < g.n_points; ++i)
        CHECK(lin.value(2, i) == doctest::Approx(g.point(i) - 2.0).epsilon(1e-15));

    const LineEnsemble zero = fixture_ensemble("constant", g, 2);
    CHECK(zero.lines == std::vector<std::vector<double>>(2, std::vector<double>(5, 0.0)));

    CHECK_THROWS_AS(fixture_ensemble("unknown"), std::invalid_argument);
    CHECK_THROWS_AS(fixture_ensemble("linear"), std::invalid_argument);
}

TEST_CASE("refinement keeps breakpoints and interpolates linearly") {
    const LineEnsemble e2 = fixture_ensemble("E2");
    const LineEnsemble fine = refine_ensemble(e2, 2);
    CHECK(fine.grid.n_points == 5);
    CHECK(fine.grid.dx == 0.25);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(fine.lines[r][2 * i] == e2.lines[r][i]);
    CHECK(fine.lines[0][1] == 0.5);
    CHECK(fine.lines[1][1] == -0.5);
    CHECK(fine.lines[1][3] == 0.5);

    CHECK(refine_ensemble(e2, 1).lines == e2.lines);
    CHECK_THROWS_AS(refine_ensemble(e2, 0), std::invalid_argument);
}

TEST_CASE("ensemble csv round trip is exact") {
    const Grid g = make_grid(-0.3, 0.07, 17);
    const LineEnsemble env = sample_brownian_lines(g, 3, 1.7, RngSpec{42, 0});
    std::stringstream buffer;
    write_ensemble_csv(buffer, env);
    const LineEnsemble back = read_ensemble_csv(buffer);
    CHECK(back.lines == env.lines);
    CHECK(back.grid.n_points == env.grid.n_points);
    CHECK(back.grid.x0 == doctest::Approx(env.grid.x0).epsilon(1e-15));
    CHECK(back.grid.dx == doctest::Approx(env.grid.dx).epsilon(1e-12));
}
