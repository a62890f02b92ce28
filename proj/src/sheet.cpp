#include "lpplab/sheet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lpplab/parallel.hpp"
#include "lpplab/stats.hpp"
#include "lpplab/thresholds.hpp"

namespace lpplab {

namespace {

std::size_t snap_index(const Grid& g, double position, const char* what) {
    const double t = (position - g.x0) / g.dx;
    if (t <= -0.5 || t >= static_cast<double>(g.n_points - 1) + 0.5)
        throw std::out_of_range(std::string(what) + ": position maps outside the environment grid");
    auto i = static_cast<long long>(std::llround(t));
    if (i < 0) i = 0;
    if (i >= static_cast<long long>(g.n_points)) i = static_cast<long long>(g.n_points) - 1;
    return static_cast<std::size_t>(i);
}

void check_sheet_params(const SheetParams& p) {
    if (p.n < 1) throw std::invalid_argument("sheet: n must be >= 1");
    if (!(p.y_b >= p.y_a)) throw std::invalid_argument("sheet: need y_b >= y_a");
    if (!(p.dx_env > 0.0)) throw std::invalid_argument("sheet: dx_env must be > 0");
}

} // namespace

double depth_cbrt(std::size_t n) {
    return std::cbrt(static_cast<double>(n));
}

Grid environment_grid(const SheetParams& p) {
    check_sheet_params(p);
    const double c = depth_cbrt(p.n);
    const double n23 = c * c;
    const double x_min = p.x_grid.front(), x_max = p.x_grid.back();
    const double left = 2.0 * p.y_a * n23;
    const double right = static_cast<double>(p.n) + 2.0 * x_max * n23;
    if (static_cast<double>(p.n) + 2.0 * x_min * n23 < 2.0 * p.y_b * n23)
        throw std::invalid_argument("sheet: evaluation window starts left of the latest start");
    const double span = right - left;
    if (!(span > 0.0)) throw std::invalid_argument("sheet: empty environment window");
    const auto cells = static_cast<std::size_t>(std::ceil(span / p.dx_env));
    return make_grid(left, p.dx_env, cells + 1);
}

LineEnsemble sample_sheet_environment(const SheetParams& p) {
    return sample_brownian_lines(environment_grid(p), p.n, 1.0, p.rng);
}

double sheet_value(const LineEnsemble& env, const SheetParams& p, double y, double x) {
    check_sheet_params(p);
    if (p.n > env.line_count())
        throw std::invalid_argument("sheet_value: environment has fewer lines than params.n");
    const double c = depth_cbrt(p.n);
    const double n23 = c * c;
    const std::size_t iy = snap_index(env.grid, 2.0 * y * n23, "sheet_value");
    const std::size_t ix =
        snap_index(env.grid, static_cast<double>(p.n) + 2.0 * x * n23, "sheet_value");
    if (ix < iy) throw std::invalid_argument("sheet_value: end position left of start");
    const double v = lpp_value(env, LatticePoint{iy, p.n}, LatticePoint{ix, 1});
    return (v - 2.0 * static_cast<double>(p.n) - 2.0 * (x - y) * n23) / c;
}

namespace {

struct StartDp {
    std::size_t start_index;
    std::vector<double> acc;
};

double difference_at(const StartDp& a, const StartDp& b, std::size_t ix, double centering,
                     double n13) {
    if (ix < b.start_index)
        throw std::invalid_argument("difference profile: end position left of the later start");
    return ((b.acc[ix - b.start_index] - a.acc[ix - a.start_index]) + centering) / n13;
}

} // namespace

std::vector<double> difference_values(const SheetParams& p, const std::vector<double>& xs) {
    const Grid eg = environment_grid(p);
    const double c = depth_cbrt(p.n);
    const double n23 = c * c;
    StartDp a{snap_index(eg, 2.0 * p.y_a * n23, "difference_values"), {}};
    StartDp b{snap_index(eg, 2.0 * p.y_b * n23, "difference_values"), {}};
    a.acc.assign(eg.n_points - a.start_index, kNegInf);
    b.acc.assign(eg.n_points - b.start_index, kNegInf);
    for (std::size_t j = p.n; j >= 1; --j) {
        const std::vector<double> row = sample_brownian_row(eg, 1.0, p.rng, j - 1);
        const double base = j == p.n ? 0.0 : kNegInf;
        lpp_pass(a.acc.data(), row.data() + a.start_index, a.acc.size(), base);
        lpp_pass(b.acc.data(), row.data() + b.start_index, b.acc.size(), base);
    }
    const double centering = 2.0 * (p.y_b - p.y_a) * n23;
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t ix =
            snap_index(eg, static_cast<double>(p.n) + 2.0 * xs[i] * n23, "difference_values");
        out[i] = difference_at(a, b, ix, centering, c);
    }
    return out;
}

Profile difference_profile(const SheetParams& p) {
    std::vector<double> xs(p.x_grid.n_points);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = p.x_grid.point(i);
    return Profile{p.x_grid, 0, difference_values(p, xs)};
}

Profile difference_profile_on(const LineEnsemble& env, const SheetParams& p) {
    check_sheet_params(p);
    if (p.n > env.line_count())
        throw std::invalid_argument("difference_profile_on: environment has fewer lines than params.n");
    const double c = depth_cbrt(p.n);
    const double n23 = c * c;
    const std::size_t ia = snap_index(env.grid, 2.0 * p.y_a * n23, "difference_profile_on");
    const std::size_t ib = snap_index(env.grid, 2.0 * p.y_b * n23, "difference_profile_on");
    const Profile la = lpp_profile(env, LatticePoint{ia, p.n}, 1);
    const Profile lb = lpp_profile(env, LatticePoint{ib, p.n}, 1);
    StartDp a{ia, la.values};
    StartDp b{ib, lb.values};
    const double centering = 2.0 * (p.y_b - p.y_a) * n23;
    Profile out{p.x_grid, 0, std::vector<double>(p.x_grid.n_points)};
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const std::size_t ix = snap_index(
            env.grid, static_cast<double>(p.n) + 2.0 * p.x_grid.point(i) * n23,
            "difference_profile_on");
        out.values[i] = difference_at(a, b, ix, centering, c);
    }
    return out;
}

BoundaryData boundary_data(const LineEnsemble& env, LatticePoint start, std::size_t column,
                           std::size_t k) {
    if (start.line_index < 1 || start.line_index > env.line_count() ||
        start.grid_index >= env.grid.n_points)
        throw std::invalid_argument("boundary_data: start outside environment");
    if (column < start.grid_index || column >= env.grid.n_points)
        throw std::invalid_argument("boundary_data: column must lie at or right of start");
    if (k < 1 || k > start.line_index)
        throw std::invalid_argument("boundary_data: need 1 <= k <= start line");
    const std::size_t len = column - start.grid_index + 1;
    std::vector<double> acc(len, kNegInf);
    std::vector<double> at_column(k, 0.0);
    for (std::size_t j = start.line_index; j >= 1; --j) {
        const double* row = env.lines[j - 1].data() + start.grid_index;
        lpp_pass(acc.data(), row, len, j == start.line_index ? 0.0 : kNegInf);
        if (j <= k) at_column[j - 1] = acc[len - 1];
    }
    BoundaryData out{column, std::vector<double>(k)};
    for (std::size_t i = 0; i < k; ++i) out.values[i] = at_column[i] - at_column[0];
    return out;
}

std::vector<Profile> z_processes(const LineEnsemble& env, const BoundaryData& boundary) {
    const std::size_t k = boundary.values.size();
    if (k == 0 || k > env.line_count())
        throw std::invalid_argument("z_processes: boundary length must be in [1, k]");
    if (boundary.column_index >= env.grid.n_points)
        throw std::invalid_argument("z_processes: column out of range");
    const std::size_t len = env.grid.n_points - boundary.column_index;
    std::vector<double> acc(len, kNegInf);
    std::vector<Profile> out(k);
    for (std::size_t j = k; j >= 1; --j) {
        const double* row = env.lines[j - 1].data() + boundary.column_index;
        lpp_pass(acc.data(), row, len, boundary.values[j - 1]);
        out[j - 1] = Profile{env.grid, boundary.column_index, acc};
    }
    return out;
}

std::size_t maximizer_index(const LineEnsemble& env, const BoundaryData& boundary,
                            std::size_t x_index) {
    const std::size_t k = boundary.values.size();
    if (k == 0 || k > env.line_count())
        throw std::invalid_argument("maximizer_index: boundary length must be in [1, k]");
    if (x_index < boundary.column_index || x_index >= env.grid.n_points)
        throw std::invalid_argument("maximizer_index: x must lie at or right of the column");
    double best = kNegInf;
    std::size_t arg = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        const double v = boundary.values[j - 1] +
                         lpp_value(env, LatticePoint{boundary.column_index, j},
                                   LatticePoint{x_index, 1});
        if (v > best) {
            best = v;
            arg = j;
        }
    }
    return arg;
}

ExperimentReport growth_experiment(const SheetParams& params, const std::vector<double>& M_list,
                                   std::size_t replicas, unsigned threads) {
    if (M_list.size() < 2)
        throw std::invalid_argument("growth_experiment: need at least two M values");
    for (std::size_t i = 1; i < M_list.size(); ++i)
        if (!(M_list[i] > M_list[i - 1]))
            throw std::invalid_argument("growth_experiment: M_list must be increasing");
    if (replicas < 30) throw std::invalid_argument("growth_experiment: need replicas >= 30");
    const auto t0 = std::chrono::steady_clock::now();

    SheetParams base = params;
    base.x_grid = make_grid(M_list.front(), M_list.back() - M_list.front(), 2);

    std::vector<std::vector<double>> results(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        SheetParams p = base;
        p.rng = RngSpec{params.rng.master_seed, params.rng.stream_index + r};
        results[r] = difference_values(p, M_list);
    });

    ExperimentReport report;
    report.name = "growth";
    report.seed = params.rng.master_seed;
    report.params = {
        {"n", std::to_string(params.n)},
        {"y_a", format_double(params.y_a)},
        {"y_b", format_double(params.y_b)},
        {"dx_env", format_double(params.dx_env)},
        {"replicas", std::to_string(replicas)},
    };
    std::vector<double> means(M_list.size());
    for (std::size_t m = 0; m < M_list.size(); ++m) {
        std::vector<double> column(replicas);
        for (std::size_t r = 0; r < replicas; ++r) column[r] = results[r][m];
        means[m] = mean(column);
        report.statistics["mean_D_" + format_double(M_list[m])] = means[m];
        report.statistics["stderr_D_" + format_double(M_list[m])] = mean_stderr(column);
        report.columns["D_" + format_double(M_list[m])] = std::move(column);
    }
    const LinearFit fit = linear_fit(M_list, means);
    const double target = 2.0 * (params.y_b - params.y_a);
    report.statistics["slope"] = fit.slope;
    report.statistics["intercept"] = fit.intercept;
    report.statistics["target_slope"] = target;
    report.pass = std::abs(fit.slope - target) <= thresholds::kGrowthSlopeRelTol * std::abs(target);
    if (target == 0.0) report.pass = fit.slope == 0.0;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace lpplab
