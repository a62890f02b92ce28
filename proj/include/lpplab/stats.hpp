#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "lpplab/rng.hpp"

namespace lpplab {

struct Sample {
    std::vector<double> values;
    bool sorted = false;
};

Sample make_sample(std::vector<double> values);

// Sorts in place and sets the flag; no-op if already flagged.
void sort_sample(Sample& s);

/*
 * Kolmogorov-Smirnov distance of a sample to a reference CDF:
 * max over order statistics of max(|i/n - F(x_(i))|, |F(x_(i)) - (i-1)/n|).
 */
double ks_one_sample(const Sample& s, const std::function<double(double)>& cdf);

// sup over the merged point set of |ECDF1 - ECDF2|; symmetric in arguments.
double ks_two_sample(const Sample& s1, const Sample& s2);

// CDF of |Normal(0, sigma^2)|: erf(x / (sigma*sqrt(2))) for x >= 0, else 0.
double half_normal_cdf(double sigma, double x);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares; r_squared is 1 when the responses are constant.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/*
 * Percentile bootstrap interval for `statistic` at confidence `level`.
 * Deterministic given rng; resample r draws from substream r.
 */
std::pair<double, double> bootstrap_ci(
    const Sample& s,
    const std::function<double(const std::vector<double>&)>& statistic,
    double level, std::size_t resamples, const RngSpec& rng);

double mean(const std::vector<double>& values);

// Standard error of the mean (sample standard deviation / sqrt(n)).
double mean_stderr(const std::vector<double>& values);

} // namespace lpplab
