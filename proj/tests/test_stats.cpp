#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lpplab/stats.hpp"

using namespace lpplab;

namespace {
double uniform01_cdf(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }
}

TEST_CASE("one-sample KS on pinned examples") {
    CHECK(ks_one_sample(make_sample({0.5}), uniform01_cdf) == doctest::Approx(0.5));
    CHECK(ks_one_sample(make_sample({0.25, 0.75}), uniform01_cdf) == doctest::Approx(0.25));
    // Perfectly placed quantiles: distance 1/(2n) on both sides of each point.
    CHECK(ks_one_sample(make_sample({0.125, 0.375, 0.625, 0.875}), uniform01_cdf) ==
          doctest::Approx(0.125));
    const double d = ks_one_sample(make_sample({0.9, 0.95, 0.99}), uniform01_cdf);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(d == doctest::Approx(0.9));
}

TEST_CASE("two-sample KS: pinned example, symmetry, ties") {
    const Sample a = make_sample({0.0, 1.0});
    const Sample b = make_sample({0.5});
    CHECK(ks_two_sample(a, b) == doctest::Approx(0.5));
    CHECK(ks_two_sample(b, a) == doctest::Approx(0.5));
    CHECK(ks_two_sample(a, a) == doctest::Approx(0.0));
    // All mass tied at one point on both sides.
    CHECK(ks_two_sample(make_sample({1.0, 1.0}), make_sample({1.0})) == doctest::Approx(0.0));
    CHECK(ks_two_sample(make_sample({0.0, 0.0}), make_sample({1.0, 1.0})) ==
          doctest::Approx(1.0));
}

TEST_CASE("half-normal cdf") {
    CHECK(half_normal_cdf(1.0, -0.5) == 0.0);
    CHECK(half_normal_cdf(1.0, 0.0) == 0.0);
    CHECK(half_normal_cdf(1.0, 1.0) == doctest::Approx(0.6826894921).epsilon(1e-7));
    CHECK(half_normal_cdf(2.0, 2.0) == doctest::Approx(0.6826894921).epsilon(1e-7));
    // Scale family: F(sigma, sigma*q) depends only on q.
    for (double q : {0.1, 0.7, 1.9, 3.2})
        CHECK(half_normal_cdf(3.0, 3.0 * q) ==
              doctest::Approx(half_normal_cdf(1.0, q)).epsilon(1e-12));
    CHECK(half_normal_cdf(1.0, 40.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(half_normal_cdf(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(half_normal_cdf(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("linear fit") {
    const LinearFit f = linear_fit({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0});
    CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));

    const LinearFit affine = linear_fit({-2.0, 0.5, 3.0, 7.0}, {-4.0, 3.5, 11.0, 23.0});
    CHECK(affine.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(affine.intercept == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(affine.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    // Constant responses: zero total variation counts as a perfect fit.
    CHECK(linear_fit({0.0, 1.0, 2.0}, {5.0, 5.0, 5.0}).r_squared == 1.0);

    CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({3.0, 3.0, 3.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("bootstrap confidence interval") {
    const auto stat_mean = [](const std::vector<double>& v) { return mean(v); };
    const Sample constant = make_sample(std::vector<double>(20, 5.0));
    const auto [clo, chi] = bootstrap_ci(constant, stat_mean, 0.95, 400, RngSpec{1, 0});
    CHECK(clo == 5.0);
    CHECK(chi == 5.0);

    std::vector<double> values;
    RngStream s(20250822, 2);
    for (int i = 0; i < 200; ++i) values.push_back(s.next_gaussian());
    const Sample sample = make_sample(values);
    const auto [lo, hi] = bootstrap_ci(sample, stat_mean, 0.95, 1000, RngSpec{1, 0});
    CHECK(lo < hi);
    CHECK(lo <= mean(values));
    CHECK(hi >= mean(values));
    CHECK(hi - lo < 5.0 / std::sqrt(200.0));
    // Deterministic in the rng spec.
    const auto [lo2, hi2] = bootstrap_ci(sample, stat_mean, 0.95, 1000, RngSpec{1, 0});
    CHECK(lo == lo2);
    CHECK(hi == hi2);

    CHECK_THROWS_AS(bootstrap_ci(sample, stat_mean, 0.0, 1000, RngSpec{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(sample, stat_mean, 0.95, 10, RngSpec{1, 0}),
                    std::invalid_argument);
}

TEST_CASE("mean and stderr") {
    CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
    CHECK(mean_stderr({1.0, 1.0, 1.0}) == 0.0);
    // sd of {1,2,3,4} is sqrt(5/3); stderr divides by sqrt(4).
    CHECK(mean_stderr({1.0, 2.0, 3.0, 4.0}) ==
          doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));
}
