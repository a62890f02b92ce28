#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lpplab/sheet.hpp"
#include "lpplab/report.hpp"

using namespace lpplab;

namespace {

SheetParams small_params(std::uint64_t seed) {
    SheetParams p;
    p.n = 16;
    p.y_a = -0.2;
    p.y_b = 0.2;
    p.x_grid = make_grid(-1.0, 2.0 / 256.0, 257);
    p.dx_env = 0.01;
    p.rng = RngSpec{seed, 0};
    return p;
}

} // namespace

TEST_CASE("environment grid covers starts and ends") {
    const SheetParams p = small_params(1);
    const Grid g = environment_grid(p);
    const double n23 = depth_cbrt(p.n) * depth_cbrt(p.n);
    CHECK(g.front() <= 2.0 * p.y_a * n23);
    CHECK(g.back() >= static_cast<double>(p.n) + 2.0 * p.x_grid.back() * n23);
    CHECK(g.dx == p.dx_env);
}

TEST_CASE("sheet value formula on a flat environment") {
    SheetParams p;
    p.n = 8;
    p.y_a = 0.0;
    p.y_b = 0.1;
    p.x_grid = make_grid(0.0, 0.25, 5);
    p.dx_env = 0.5;
    const LineEnsemble env = fixture_ensemble("constant", environment_grid(p), p.n);
    const double c = depth_cbrt(p.n);
    CHECK(c == doctest::Approx(2.0).epsilon(1e-15));
    // All rows are zero, so the passage value is 0 and only the centering
    // remains: -(2n + 2(x-y)n^{2/3}) / n^{1/3}.
    const double v = sheet_value(env, p, 0.0, 1.0);
    CHECK(v == doctest::Approx(-(16.0 + 2.0 * 4.0) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(sheet_value(env, p, -50.0, 0.0), std::out_of_range);
    CHECK_THROWS_AS(sheet_value(env, p, 0.0, 50.0), std::out_of_range);
}

TEST_CASE("difference profile: streaming equals materialized bit for bit") {
    const SheetParams p = small_params(3);
    const Profile streamed = difference_profile(p);
    const LineEnsemble env = sample_sheet_environment(p);
    const Profile materialized = difference_profile_on(env, p);
    REQUIRE(streamed.size() == materialized.size());
    CHECK(streamed.values == materialized.values);
}

TEST_CASE("difference profile is deterministic and non-decreasing") {
    const SheetParams p = small_params(4);
    const Profile a = difference_profile(p);
    const Profile b = difference_profile(p);
    CHECK(a.values == b.values);
    std::size_t decreases = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        decreases += a.values[i + 1] < a.values[i] - 1e-9 ? 1 : 0;
    CHECK(decreases == 0);
}

TEST_CASE("coincident starts give an identically zero difference") {
    SheetParams p = small_params(5);
    p.y_b = p.y_a;
    const Profile d = difference_profile(p);
    for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("difference profile agrees with sheet value differences") {
    const SheetParams p = small_params(6);
    const LineEnsemble env = sample_sheet_environment(p);
    const Profile d = difference_profile_on(env, p);
    for (std::size_t j = 0; j < d.size(); j += 64) {
        const double x = d.x(j);
        const double direct = sheet_value(env, p, p.y_b, x) - sheet_value(env, p, p.y_a, x);
        // Same quantity, different evaluation order: the profile folds the
        // start offsets into one centering term, so allow rounding slack.
        CHECK(d.values[j] == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("difference values at arbitrary coordinates match the profile") {
    const SheetParams p = small_params(7);
    const Profile d = difference_profile(p);
    const std::vector<double> at = difference_values(p, {d.x(0), d.x(100), d.x(256)});
    CHECK(at[0] == d.values[0]);
    CHECK(at[1] == d.values[100]);
    CHECK(at[2] == d.values[256]);
}

TEST_CASE("boundary data on the fixture and in general") {
    const LineEnsemble e2 = fixture_ensemble("E2");
    const BoundaryData bd = boundary_data(e2, {0, 2}, 1, 2);
    CHECK(bd.column_index == 1);
    CHECK(bd.values == std::vector<double>{0.0, -2.0});

    const LineEnsemble env =
        sample_brownian_lines(make_grid(0.0, 0.05, 30), 5, 2.0, RngSpec{11, 0});
    const BoundaryData b = boundary_data(env, {2, 5}, 20, 5);
    CHECK(b.values[0] == 0.0);
    for (std::size_t i = 0; i + 1 < b.values.size(); ++i)
        CHECK(b.values[i + 1] <= b.values[i] + 1e-12);
    CHECK_THROWS_AS(boundary_data(env, {2, 5}, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(boundary_data(env, {2, 5}, 20, 6), std::invalid_argument);
}

TEST_CASE("z processes on the fixture") {
    const LineEnsemble e2 = fixture_ensemble("E2");
    const BoundaryData b{0, {0.3, 0.0}};
    const std::vector<Profile> zs = z_processes(e2, b);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0].values == std::vector<double>{0.3, 1.3, 2.0});
    CHECK(zs[1].values == std::vector<double>{0.0, -1.0, 2.0});
    // Z_i dominates Z_{i+1} pointwise.
    for (std::size_t j = 0; j < 3; ++j) CHECK(zs[0].values[j] >= zs[1].values[j]);

    CHECK(maximizer_index(e2, b, 2) == 2);
    CHECK(maximizer_index(e2, b, 1) == 1);
}

TEST_CASE("z processes equal the boundary profile routine") {
    const LineEnsemble env =
        sample_brownian_lines(make_grid(0.0, 0.05, 30), 4, 2.0, RngSpec{13, 0});
    BoundaryData b{6, {0.0, -0.3, -0.7, -1.9}};
    const std::vector<Profile> zs = z_processes(env, b);
    for (std::size_t i = 1; i <= 4; ++i) {
        const Profile direct = lpp_profile_with_boundary(env, b, i);
        CHECK(zs[i - 1].values == direct.values);
    }
}

TEST_CASE("growth experiment validation and statistics layout") {
    SheetParams p = small_params(9);
    CHECK_THROWS_AS(growth_experiment(p, {1.0}, 30), std::invalid_argument);
    CHECK_THROWS_AS(growth_experiment(p, {1.0, 1.0}, 30), std::invalid_argument);
    CHECK_THROWS_AS(growth_experiment(p, {1.0, 2.0}, 3), std::invalid_argument);

    const ExperimentReport r = growth_experiment(p, {-0.5, 0.5}, 30, 1);
    CHECK(r.statistics.count("slope") == 1);
    CHECK(r.statistics.count("target_slope") == 1);
    CHECK(r.statistics.at("target_slope") ==
          doctest::Approx(2.0 * (p.y_b - p.y_a)).epsilon(1e-12));
    CHECK(r.statistics.count("mean_D_0.5") == 1);
    CHECK(r.columns.at("D_0.5").size() == 30);
    // Thread count must not change the statistics.
    const ExperimentReport r8 = growth_experiment(p, {-0.5, 0.5}, 30, 8);
    CHECK(statistics_json(r) == statistics_json(r8));
}
