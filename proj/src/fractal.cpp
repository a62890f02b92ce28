#include "lpplab/fractal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lpplab/parallel.hpp"
#include "lpplab/stats.hpp"
#include "lpplab/thresholds.hpp"

namespace lpplab {

Profile running_max(const Profile& p) {
    Profile out = p;
    double m = kNegInf;
    for (double& v : out.values) {
        if (v > m) m = v;
        v = m;
    }
    return out;
}

Profile local_time_occupation(const Profile& path, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("local_time_occupation: epsilon must be > 0");
    Profile out{path.grid, path.offset, std::vector<double>(path.size())};
    const double scale = path.grid.dx / (2.0 * epsilon);
    std::size_t count = 0;
    for (std::size_t j = 0; j < path.size(); ++j) {
        out.values[j] = scale * static_cast<double>(count);
        if (std::abs(path.values[j]) < epsilon) ++count;
    }
    return out;
}

PointMask nc_mask(const Profile& D, double tol) {
    if (D.size() < 2) throw std::invalid_argument("nc_mask: profile must span at least one cell");
    if (!(tol >= 0.0)) throw std::invalid_argument("nc_mask: tol must be >= 0");
    PointMask out{make_grid(D.x(0), D.grid.dx, D.size()), std::vector<bool>(D.size() - 1)};
    for (std::size_t i = 0; i + 1 < D.size(); ++i)
        out.mask[i] = D.values[i + 1] - D.values[i] > tol;
    return out;
}

double default_nc_tol(const Profile& D) {
    double m = 1.0;
    for (double v : D.values) m = std::max(m, std::abs(v));
    return 1e-7 * m;
}

namespace {

std::size_t checked_box_count(const PointMask& mask, std::size_t k_max, std::size_t base) {
    if (base < 2) throw std::invalid_argument("box_counts: base must be >= 2");
    const std::size_t cells = mask.mask.size();
    std::size_t boxes = 1;
    for (std::size_t k = 0; k < k_max; ++k) {
        if (boxes > cells / base)
            throw std::invalid_argument("box_counts: base^k_max exceeds the cell count");
        boxes *= base;
    }
    return boxes;
}

} // namespace

std::vector<std::size_t> box_counts(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                                    std::size_t base) {
    if (k_min >= k_max) throw std::invalid_argument("box_counts: need k_min < k_max");
    checked_box_count(mask, k_max, base);
    const std::size_t cells = mask.mask.size();
    bool any = false;
    for (bool m : mask.mask) any = any || m;
    if (!any) throw std::invalid_argument("box_counts: empty set has no box dimension");

    std::vector<std::size_t> out;
    out.reserve(k_max - k_min + 1);
    std::size_t boxes = 1;
    for (std::size_t k = 0; k < k_min; ++k) boxes *= base;
    for (std::size_t k = k_min; k <= k_max; ++k, boxes *= base) {
        std::vector<char> hit(boxes, 0);
        for (std::size_t i = 0; i < cells; ++i) {
            if (!mask.mask[i]) continue;
            const std::size_t first = i * boxes / cells;
            const std::size_t last = ((i + 1) * boxes - 1) / cells;
            for (std::size_t b = first; b <= last && b < boxes; ++b) hit[b] = 1;
        }
        std::size_t n = 0;
        for (char h : hit) n += h;
        out.push_back(n);
    }
    return out;
}

std::vector<double> box_scales(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                               std::size_t base) {
    if (k_min >= k_max) throw std::invalid_argument("box_scales: need k_min < k_max");
    const double domain =
        mask.grid.dx * static_cast<double>(mask.mask.size());
    std::vector<double> out;
    out.reserve(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k)
        out.push_back(domain * std::pow(static_cast<double>(base), -static_cast<double>(k)));
    return out;
}

DimensionFit fit_box_dimension(std::vector<double> scales, std::vector<std::size_t> counts) {
    if (scales.size() != counts.size() || scales.size() < 2)
        throw std::invalid_argument("fit_box_dimension: need matching inputs of size >= 2");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (counts[i] < 4) continue;
        xs.push_back(-std::log(scales[i]));
        ys.push_back(std::log(static_cast<double>(counts[i])));
    }
    if (xs.size() < 2) {
        xs.clear();
        ys.clear();
        for (std::size_t i = 0; i < scales.size(); ++i) {
            xs.push_back(-std::log(scales[i]));
            ys.push_back(std::log(static_cast<double>(counts[i])));
        }
    }
    const LinearFit fit = linear_fit(xs, ys);
    DimensionFit out;
    out.scales = std::move(scales);
    out.counts = std::move(counts);
    out.slope = fit.slope;
    out.r_squared = fit.r_squared;
    return out;
}

DimensionFit box_dimension(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                           std::size_t base) {
    return fit_box_dimension(box_scales(mask, k_min, k_max, base),
                             box_counts(mask, k_min, k_max, base));
}

ExperimentReport levy_experiment(double rate, double t_max, double dx, double epsilon,
                                 std::size_t replicas, const RngSpec& rng, unsigned threads) {
    if (!(rate > 0.0)) throw std::invalid_argument("levy_experiment: rate must be > 0");
    if (!(t_max >= 0.0)) throw std::invalid_argument("levy_experiment: t_max must be >= 0");
    if (!(dx > 0.0)) throw std::invalid_argument("levy_experiment: dx must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("levy_experiment: epsilon must be > 0");
    if (replicas < 100) throw std::invalid_argument("levy_experiment: need replicas >= 100");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> max_sample(replicas, 0.0), occ_sample(replicas, 0.0);
    if (t_max > 0.0) {
        const auto cells = static_cast<std::size_t>(std::llround(t_max / dx));
        if (cells < 1) throw std::invalid_argument("levy_experiment: dx larger than t_max");
        const Grid grid = make_grid(0.0, dx, cells + 1);
        parallel_for(replicas, threads, [&](std::size_t r) {
            const RngSpec spec{rng.master_seed, rng.stream_index + r};
            const Profile path_m{grid, 0, sample_brownian_row(grid, rate, spec, 0)};
            max_sample[r] = running_max(path_m).values.back();
            const Profile path_l{grid, 0, sample_brownian_row(grid, rate, spec, 1)};
            // Occupation measures time; the Levy-paired local time accrues
            // per unit quadratic variation d<B> = rate dt.
            occ_sample[r] = rate * local_time_occupation(path_l, epsilon).values.back();
        });
    }

    ExperimentReport report;
    report.name = "levy";
    report.seed = rng.master_seed;
    report.params = {
        {"rate", format_double(rate)},       {"t_max", format_double(t_max)},
        {"dx", format_double(dx)},           {"epsilon", format_double(epsilon)},
        {"replicas", std::to_string(replicas)},
    };
    const double sigma = std::sqrt(rate * t_max);
    report.columns["max"] = max_sample;
    report.columns["occupation"] = occ_sample;
    const double ks2 = ks_two_sample(make_sample(max_sample), make_sample(occ_sample));
    const double m = mean(max_sample);
    const double se = t_max > 0.0 ? mean_stderr(max_sample) : 0.0;
    const double target_mean = sigma * std::sqrt(2.0 / 3.14159265358979323846);
    report.statistics["ks_two_sample"] = ks2;
    report.statistics["mean_max"] = m;
    report.statistics["stderr_max"] = se;
    report.statistics["target_mean"] = target_mean;
    report.statistics["mean_occupation"] = mean(occ_sample);
    bool pass = ks2 <= thresholds::kLevyTwoSampleKs &&
                std::abs(m - target_mean) <= thresholds::kLevyMeanSigmas * se;
    if (t_max > 0.0) {
        const double ks1 = ks_one_sample(make_sample(max_sample),
                                         [&](double x) { return half_normal_cdf(sigma, x); });
        report.statistics["ks_one_sample"] = ks1;
        pass = pass && ks1 <= thresholds::kLevyOneSampleKs;
    } else {
        pass = ks2 == 0.0 && m == 0.0;
    }
    report.pass = pass;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

StopRule parse_stop_rule(const std::string& text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("stop rule: expected name(args), got \"" + text + "\"");
    const std::string name = text.substr(0, open);
    const std::string args = text.substr(open + 1, close - open - 1);
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= args.size() && !args.empty()) {
        const auto comma = args.find(',', pos);
        const std::string piece =
            comma == std::string::npos ? args.substr(pos) : args.substr(pos, comma - pos);
        vals.push_back(std::stod(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    StopRule rule;
    if (name == "tau_lambda" && vals.size() == 1) {
        rule.kind = StopKind::TauLambda;
        rule.a = vals[0];
    } else if (name == "rho" && vals.size() == 1) {
        rule.kind = StopKind::Rho;
        rule.a = vals[0];
    } else if (name == "rho_c" && vals.size() == 2) {
        rule.kind = StopKind::RhoC;
        rule.a = vals[0];
        rule.b = vals[1];
        if (!(rule.b > 0.0)) throw std::invalid_argument("stop rule rho_c: need h > 0");
    } else if (name == "xi" && vals.size() == 2) {
        rule.kind = StopKind::Xi;
        rule.a = vals[0];
        rule.b = vals[1];
        if (!(rule.b > rule.a)) throw std::invalid_argument("stop rule xi: need c < d");
    } else {
        throw std::invalid_argument("stop rule: unknown form \"" + text + "\"");
    }
    return rule;
}

std::string stop_rule_name(const StopRule& rule) {
    switch (rule.kind) {
        case StopKind::TauLambda: return "tau_lambda(" + format_double(rule.a) + ")";
        case StopKind::Rho: return "rho(" + format_double(rule.a) + ")";
        case StopKind::RhoC:
            return "rho_c(" + format_double(rule.a) + "," + format_double(rule.b) + ")";
        case StopKind::Xi: return "xi(" + format_double(rule.a) + "," + format_double(rule.b) + ")";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kAuxSubstream = std::uint64_t{1} << 40;
constexpr std::size_t kNoTrigger = static_cast<std::size_t>(-1);

// A stop is the triggering cell plus the value the forward increments are
// measured from.
struct StopPoint {
    std::size_t index = kNoTrigger;
    double base = 0.0;
};

// First cell index >= from whose increment exceeds tol; the base is the
// cell's left endpoint value, the onset of the increase.
StopPoint next_increase(const std::vector<double>& v, std::size_t from, double tol) {
    for (std::size_t i = from; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] > tol) return {i, v[i]};
    return {};
}

// First cell at or after `from` whose right endpoint reaches `level`;
// requires v[from] < level to count as an interior hit. The base is the
// level itself: the continuum stop value equals the level, while the cell's
// left endpoint sits below it by the in-cell overshoot.
StopPoint level_hit(const std::vector<double>& v, std::size_t from, double level) {
    if (!(v[from] < level)) return {};
    for (std::size_t i = from; i + 1 < v.size(); ++i)
        if (v[i + 1] >= level) return {i, level};
    return {};
}

std::size_t grid_index_at_or_after(const Profile& p, double x) {
    const double t = std::ceil((x - p.grid.x0) / p.grid.dx - 1e-9);
    if (t < 0.0) return 0;
    if (t >= static_cast<double>(p.size())) return p.size() - 1;
    return static_cast<std::size_t>(t);
}

StopPoint locate_stop(const Profile& D, const StopRule& rule, double tol, double xi_u01) {
    const std::vector<double>& v = D.values;
    switch (rule.kind) {
        case StopKind::TauLambda:
            return next_increase(v, grid_index_at_or_after(D, rule.a), tol);
        case StopKind::Rho:
            return level_hit(v, 0, rule.a);
        case StopKind::RhoC: {
            const std::size_t ic = grid_index_at_or_after(D, rule.a);
            return level_hit(v, ic, v[ic] + rule.b);
        }
        case StopKind::Xi: {
            const std::size_t ic = grid_index_at_or_after(D, rule.a);
            const std::size_t id = grid_index_at_or_after(D, rule.b);
            const double span = v[id] - v[ic];
            if (!(span > tol)) return {};
            const double level = v[ic] + xi_u01 * span;
            // A zero draw degenerates to the first increase after c.
            if (!(v[ic] < level)) return next_increase(v, ic, tol);
            return level_hit(v, ic, level);
        }
    }
    return {};
}

} // namespace

ExperimentReport local_limit_experiment(const SheetParams& params, const StopRule& stop_rule,
                                        const std::vector<double>& eps_list, double t_eval,
                                        std::size_t replicas, unsigned threads) {
    if (!(t_eval > 0.0)) throw std::invalid_argument("local_limit: t_eval must be > 0");
    if (eps_list.empty()) throw std::invalid_argument("local_limit: eps_list is empty");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("local_limit: eps_list must be decreasing");
    if (replicas < 200) throw std::invalid_argument("local_limit: need replicas >= 200");
    if (eps_list.back() * t_eval < params.x_grid.dx)
        throw std::invalid_argument(
            "local_limit: eps*t_eval below the evaluation grid spacing; refusing to alias");
    const auto t0 = std::chrono::steady_clock::now();

    struct ReplicaResult {
        bool triggered = false;
        std::vector<double> samples;
    };
    std::vector<ReplicaResult> results(replicas);
    const double eps_max = eps_list.front();

    parallel_for(replicas, threads, [&](std::size_t r) {
        SheetParams p = params;
        p.rng = RngSpec{params.rng.master_seed, params.rng.stream_index + r};
        const Profile D = difference_profile(p);
        const double tol = default_nc_tol(D);
        double u01 = 0.0;
        if (stop_rule.kind == StopKind::Xi)
            u01 = RngStream(p.rng, kAuxSubstream).next_double();
        const StopPoint stop = locate_stop(D, stop_rule, tol, u01);
        if (stop.index == kNoTrigger) return;
        const double tau_x = D.x(stop.index);
        if (tau_x + eps_max * t_eval > D.x(D.size() - 1)) return;
        ReplicaResult& out = results[r];
        out.triggered = true;
        out.samples.resize(eps_list.size());
        for (std::size_t e = 0; e < eps_list.size(); ++e) {
            const double target = tau_x + eps_list[e] * t_eval;
            auto j = static_cast<std::size_t>(
                std::llround((target - D.grid.x0) / D.grid.dx)) - D.offset;
            if (j >= D.size()) j = D.size() - 1;
            out.samples[e] = (D.values[j] - stop.base) / std::sqrt(eps_list[e]);
        }
    });

    ExperimentReport report;
    report.name = "local-limit";
    report.seed = params.rng.master_seed;
    report.params = {
        {"stop_rule", stop_rule_name(stop_rule)},
        {"t_eval", format_double(t_eval)},
        {"replicas", std::to_string(replicas)},
        {"n", std::to_string(params.n)},
        {"y_a", format_double(params.y_a)},
        {"y_b", format_double(params.y_b)},
        {"dx_env", format_double(params.dx_env)},
    };
    std::size_t triggered = 0;
    for (const auto& res : results) triggered += res.triggered ? 1 : 0;
    report.statistics["n_effective"] = static_cast<double>(triggered);
    report.statistics["trigger_fraction"] =
        static_cast<double>(triggered) / static_cast<double>(replicas);
    const double sigma = 2.0 * std::sqrt(t_eval);
    double ks_smallest = 1.0;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        std::vector<double> sample;
        sample.reserve(triggered);
        for (const auto& res : results)
            if (res.triggered) sample.push_back(res.samples[e]);
        if (sample.empty()) continue;
        report.columns["sample_eps_" + format_double(eps_list[e])] = sample;
        const double ks = ks_one_sample(make_sample(std::move(sample)),
                                        [&](double x) { return half_normal_cdf(sigma, x); });
        report.statistics["ks_eps_" + format_double(eps_list[e])] = ks;
        if (e + 1 == eps_list.size()) ks_smallest = ks;
    }
    report.statistics["ks_smallest_eps"] = ks_smallest;
    report.pass = ks_smallest <= thresholds::kLocalLimitKs &&
                  triggered >= thresholds::kLocalLimitMinEffective;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ExperimentReport local_limit_oracle(double lambda, const std::vector<double>& eps_list,
                                    double t_eval, std::size_t replicas, double dx,
                                    const RngSpec& rng, unsigned threads) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("oracle: lambda must be >= 0");
    if (!(t_eval > 0.0)) throw std::invalid_argument("oracle: t_eval must be > 0");
    if (eps_list.empty()) throw std::invalid_argument("oracle: eps_list is empty");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("oracle: eps_list must be decreasing");
    if (!(dx > 0.0) || eps_list.back() * t_eval < dx)
        throw std::invalid_argument("oracle: eps*t_eval below path resolution");
    const auto t0 = std::chrono::steady_clock::now();

    constexpr double kRate = 4.0;
    constexpr double kSearchMargin = 0.5;
    const auto search_cells = static_cast<std::size_t>(std::ceil((lambda + kSearchMargin) / dx));
    const auto i_lambda = static_cast<std::size_t>(std::ceil(lambda / dx - 1e-9));
    std::vector<std::size_t> offsets(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e)
        offsets[e] = static_cast<std::size_t>(std::llround(eps_list[e] * t_eval / dx));
    const std::size_t total_points = search_cells + offsets.front() + 1;

    struct ReplicaResult {
        bool triggered = false;
        std::vector<double> samples;
    };
    std::vector<ReplicaResult> results(replicas);
    const double step_sd = std::sqrt(kRate * dx);

    parallel_for(replicas, threads, [&](std::size_t r) {
        // Streamed copy of sample_brownian_row: O(1) memory per replica.
        RngStream stream(RngSpec{rng.master_seed, rng.stream_index + r}, 0);
        double value = 0.0, max = 0.0;
        std::size_t tau = kNoTrigger;
        double max_at_tau = 0.0;
        ReplicaResult& out = results[r];
        std::size_t filled = 0;
        for (std::size_t i = 1; i < total_points; ++i) {
            value += step_sd * stream.next_gaussian();
            const double prev_max = max;
            if (value > max) max = value;
            if (tau == kNoTrigger) {
                if (i - 1 >= i_lambda && max > prev_max) {
                    tau = i - 1;
                    max_at_tau = prev_max;
                    out.samples.resize(eps_list.size());
                } else if (i - 1 >= search_cells) {
                    return;
                }
            }
            if (tau != kNoTrigger) {
                for (std::size_t e = 0; e < eps_list.size(); ++e) {
                    if (i == tau + offsets[e]) {
                        out.samples[e] = (max - max_at_tau) / std::sqrt(eps_list[e]);
                        ++filled;
                    }
                }
                if (filled == eps_list.size()) {
                    out.triggered = true;
                    return;
                }
            }
        }
    });

    ExperimentReport report;
    report.name = "local-limit-oracle";
    report.seed = rng.master_seed;
    report.params = {
        {"lambda", format_double(lambda)},
        {"t_eval", format_double(t_eval)},
        {"dx", format_double(dx)},
        {"replicas", std::to_string(replicas)},
    };
    std::size_t triggered = 0;
    for (const auto& res : results) triggered += res.triggered ? 1 : 0;
    report.statistics["n_effective"] = static_cast<double>(triggered);
    report.statistics["trigger_fraction"] =
        static_cast<double>(triggered) / static_cast<double>(replicas);
    const double sigma = 2.0 * std::sqrt(t_eval);
    double ks_worst = 0.0;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        std::vector<double> sample;
        sample.reserve(triggered);
        for (const auto& res : results)
            if (res.triggered) sample.push_back(res.samples[e]);
        if (sample.empty()) {
            ks_worst = 1.0;
            continue;
        }
        report.columns["sample_eps_" + format_double(eps_list[e])] = sample;
        const double ks = ks_one_sample(make_sample(std::move(sample)),
                                        [&](double x) { return half_normal_cdf(sigma, x); });
        report.statistics["ks_eps_" + format_double(eps_list[e])] = ks;
        ks_worst = std::max(ks_worst, ks);
    }
    report.statistics["ks_worst"] = ks_worst;
    report.pass = ks_worst < thresholds::kOracleKs;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace lpplab
