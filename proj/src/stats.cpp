#include "lpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpplab {

Sample make_sample(std::vector<double> values) {
    return Sample{std::move(values), false};
}

void sort_sample(Sample& s) {
    if (s.sorted) return;
    std::sort(s.values.begin(), s.values.end());
    s.sorted = true;
}

namespace {

std::vector<double> sorted_values(const Sample& s) {
    if (s.values.empty()) throw std::invalid_argument("empty sample");
    std::vector<double> v = s.values;
    if (!s.sorted) std::sort(v.begin(), v.end());
    return v;
}

} // namespace

double ks_one_sample(const Sample& s, const std::function<double(double)>& cdf) {
    const std::vector<double> v = sorted_values(s);
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        const double hi = std::abs((static_cast<double>(i) + 1.0) / n - f);
        const double lo = std::abs(f - static_cast<double>(i) / n);
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_two_sample(const Sample& s1, const Sample& s2) {
    const std::vector<double> a = sorted_values(s1);
    const std::vector<double> b = sorted_values(s2);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) x = a[i];
        else x = b[j];
        // Consume every occurrence of x in both samples before comparing,
        // so ties contribute a single evaluation point.
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double half_normal_cdf(double sigma, double x) {
    if (!(sigma > 0.0)) throw std::invalid_argument("half_normal_cdf: sigma must be > 0");
    if (x < 0.0) return 0.0;
    return std::erf(x / (sigma * std::sqrt(2.0)));
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: need two equal-length inputs of size >= 2");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: xs are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

std::pair<double, double> bootstrap_ci(
    const Sample& s,
    const std::function<double(const std::vector<double>&)>& statistic,
    double level, std::size_t resamples, const RngSpec& rng) {
    if (s.values.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_ci: level in (0,1)");
    if (resamples < 200) throw std::invalid_argument("bootstrap_ci: resamples must be >= 200");
    const std::size_t n = s.values.size();
    std::vector<double> stats(resamples);
    std::vector<double> draw(n);
    for (std::size_t r = 0; r < resamples; ++r) {
        RngStream stream(rng, r);
        for (std::size_t i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(stream.next_double() * static_cast<double>(n));
            if (idx >= n) idx = n - 1;
            draw[i] = s.values[idx];
        }
        stats[r] = statistic(draw);
    }
    std::sort(stats.begin(), stats.end());
    const double alpha = (1.0 - level) / 2.0;
    auto pick = [&](double q) {
        auto idx = static_cast<std::size_t>(q * static_cast<double>(resamples));
        if (idx >= resamples) idx = resamples - 1;
        return stats[idx];
    };
    return {pick(alpha), pick(1.0 - alpha)};
}

double mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double mean_stderr(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("mean_stderr: need >= 2 values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    const double n = static_cast<double>(values.size());
    return std::sqrt(ss / (n - 1.0) / n);
}

} // namespace lpplab
