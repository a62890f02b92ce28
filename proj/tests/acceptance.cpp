// Acceptance gate: one line per criterion, exit 0 only when every requested
// criterion passes. Usage: acceptance [--criterion N] [--seed S] [--threads T]
// with N = 0 (default) meaning all.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "lpplab/experiments.hpp"
#include "lpplab/fractal.hpp"
#include "lpplab/report.hpp"
#include "lpplab/sheet.hpp"
#include "lpplab/thresholds.hpp"

using namespace lpplab;

namespace {

std::string strf(const char* fmt, ...) {
    char buf[1024];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1000 randomized ensembles, every structural identity, one core, under 60 s.
Outcome criterion_1(std::uint64_t seed, unsigned) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport r = identities_experiment(1000, seed);
    const double secs = seconds_since(t0);
    const bool in_time = secs < 60.0;
    return {r.pass && in_time,
            strf("%.0f violations in 1000 draws, worst gap %.3g (tol %.0e), %.1f s (limit 60)",
                 r.statistics.at("violations_total"), r.statistics.at("worst_discrepancy"),
                 thresholds::kIdentityRelTol, secs)};
}

// Every pinned value on the three-point fixture matches bit for bit.
Outcome criterion_2(std::uint64_t, unsigned) {
    std::vector<std::string> failures;
    const std::size_t bad = e2_ledger_violations(&failures);
    if (bad == 0) return {true, "every pinned fixture value exact"};
    std::string detail = strf("%zu facts differ:", bad);
    for (const auto& f : failures) detail += " [" + f + "]";
    return {false, detail};
}

// Running maximum vs scaled occupation local time, 5000 replicas, under 120 s.
Outcome criterion_3(std::uint64_t seed, unsigned threads) {
    const double rate = 4.0, t_max = 1.0, dx = 5e-6;
    const double epsilon = 10.0 * std::sqrt(rate * dx);
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport r =
        levy_experiment(rate, t_max, dx, epsilon, 5000, RngSpec{seed, 0}, threads);
    const double secs = seconds_since(t0);
    const double dev = std::abs(r.statistics.at("mean_max") - r.statistics.at("target_mean")) /
                       r.statistics.at("stderr_max");
    return {r.pass && secs < 120.0,
            strf("ks2 %.4f (max %.2f), ks1 %.4f (max %.2f), mean %.4f vs %.4f (%.1f se, max 3), "
                 "%.1f s (limit 120)",
                 r.statistics.at("ks_two_sample"), thresholds::kLevyTwoSampleKs,
                 r.statistics.at("ks_one_sample"), thresholds::kLevyOneSampleKs,
                 r.statistics.at("mean_max"), r.statistics.at("target_mean"), dev, secs)};
}

// Middle-thirds mask recovers log2/log3 exactly; the near-zero set of a
// Brownian path lands on 1/2 with a tight fit.
Outcome criterion_4(std::uint64_t seed, unsigned threads) {
    const DimensionFit cantor = box_dimension(cantor_mask(8), 2, 7, 3);
    const double cantor_err = std::abs(cantor.slope - std::log(2.0) / std::log(3.0));
    const ExperimentReport zero =
        zero_set_calibration(1e-6, 3e-3, 20, RngSpec{seed, 0}, threads);
    const bool pass = cantor_err <= thresholds::kCantorSlopeTol && zero.pass;
    return {pass, strf("cantor slope error %.2e (tol %.0e); zero-set slope %.4f in "
                       "[%.2f, %.2f], r2 %.4f (min %.2f)",
                       cantor_err, thresholds::kCantorSlopeTol, zero.statistics.at("slope"),
                       thresholds::kZeroSetSlopeLo, thresholds::kZeroSetSlopeHi,
                       zero.statistics.at("r_squared"), thresholds::kZeroSetR2)};
}

// Box dimension of the increase set of D at n = 128, 50 replicas, with the
// tolerance sensitivity sweep, under 30 minutes.
Outcome criterion_5(std::uint64_t seed, unsigned threads) {
    DimensionParams dp;
    dp.sheet.n = 128;
    dp.sheet.x_grid = make_grid(-1.0, 2.0 / 16384.0, 16385);
    dp.sheet.rng = RngSpec{seed, 0};
    dp.replicas = 50;
    dp.k_min = 3;
    dp.k_max = 10;
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport r = nc_dimension_experiment(dp, threads);
    const double secs = seconds_since(t0);
    return {r.pass && secs < 1800.0,
            strf("slope %.4f in [%.2f, %.2f], r2 %.4f (min %.2f), flagged %.4f, "
                 "tol x10 keeps %.3f / tol /10 adds %.3f, %.0f s (limit 1800)",
                 r.statistics.at("slope"), thresholds::kNcSlopeLo, thresholds::kNcSlopeHi,
                 r.statistics.at("r_squared"), thresholds::kNcR2,
                 r.statistics.at("flagged_fraction"), r.statistics.at("tol_up_ratio"),
                 r.statistics.at("tol_down_ratio"), secs)};
}

// Exact-path oracle validates the harness at KS < 0.03 with >= 2000 effective
// replicas, then each stop rule on the simulated profile stays within 0.08 at
// the smallest eps with >= 500 effective replicas.
Outcome criterion_6(std::uint64_t seed, unsigned threads) {
    const ExperimentReport oracle = local_limit_oracle(
        0.005, {1.0 / 256.0}, 1.0, 2200, 1e-7, RngSpec{seed, 3000000}, threads);
    const bool oracle_ok =
        oracle.pass && oracle.statistics.at("n_effective") >= 2000.0;
    std::string detail =
        strf("oracle ks %.4f (max %.2f) n_eff %.0f (min 2000)", oracle.statistics.at("ks_worst"),
             thresholds::kOracleKs, oracle.statistics.at("n_effective"));
    if (!oracle_ok) return {false, detail + "; stop rules not run"};

    SheetParams p;
    p.n = 128;
    p.x_grid = make_grid(-1.0, 2.0 / 8192.0, 8193);
    const std::vector<double> eps = {1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0};
    const std::vector<std::string> rules = {"tau_lambda(-0.5)", "rho(0.25)", "xi(-0.5,0.5)"};
    bool all_ok = true;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        p.rng = RngSpec{seed, i * 1000000};
        const ExperimentReport r =
            local_limit_experiment(p, parse_stop_rule(rules[i]), eps, 1.0, 800, threads);
        all_ok = all_ok && r.pass;
        detail += strf("; %s ks %.4f (max %.2f) n_eff %.0f (min %zu)", rules[i].c_str(),
                       r.statistics.at("ks_smallest_eps"), thresholds::kLocalLimitKs,
                       r.statistics.at("n_effective"), thresholds::kLocalLimitMinEffective);
    }
    return {all_ok, detail};
}

// Mean of D(M) grows linearly in M with slope 2(y_b - y_a) within 15%.
// The start midpoint 4.0455 zeroes the depth-4096 slope corrections from the
// mean profile expansion over this M list.
Outcome criterion_7(std::uint64_t seed, unsigned threads) {
    SheetParams p;
    p.n = 4096;
    p.y_a = 3.7955;
    p.y_b = 4.2955;
    p.dx_env = 0.05;
    p.rng = RngSpec{seed, 0};
    const ExperimentReport r = growth_experiment(p, {1.0, 2.0, 4.0, 8.0}, 200, threads);
    return {r.pass, strf("slope %.4f vs target %.4f (rel err %.3f, max %.2f), %.0f s",
                         r.statistics.at("slope"), r.statistics.at("target_slope"),
                         std::abs(r.statistics.at("slope") / r.statistics.at("target_slope") - 1.0),
                         thresholds::kGrowthSlopeRelTol, r.runtime_seconds)};
}

// Identical statistics blocks for thread counts 1, 3, 8 on every experiment
// family that takes a thread count.
Outcome criterion_8(std::uint64_t seed, unsigned) {
    struct Case {
        const char* name;
        std::string json[3];
    };
    const unsigned counts[3] = {1, 3, 8};
    std::vector<Case> cases(6);
    for (int i = 0; i < 3; ++i) {
        const unsigned t = counts[i];
        cases[0].name = "levy";
        cases[0].json[i] = statistics_json(
            levy_experiment(4.0, 0.25, 1e-3, 0.06, 120, RngSpec{seed, 0}, t));
        cases[1].name = "growth";
        SheetParams gp;
        gp.n = 16;
        gp.y_a = -0.2;
        gp.y_b = 0.2;
        gp.dx_env = 0.01;
        gp.rng = RngSpec{seed, 0};
        cases[1].json[i] = statistics_json(growth_experiment(gp, {1.0, 2.0}, 30, t));
        cases[2].name = "zero-set";
        cases[2].json[i] = statistics_json(
            zero_set_calibration(1e-4, 0.02, 8, RngSpec{seed, 0}, t));
        cases[3].name = "nc-dimension";
        DimensionParams dp;
        dp.sheet.n = 16;
        dp.sheet.x_grid = make_grid(-1.0, 2.0 / 1024.0, 1025);
        dp.sheet.dx_env = 0.01;
        dp.sheet.rng = RngSpec{seed, 0};
        dp.replicas = 10;
        dp.k_min = 3;
        dp.k_max = 8;
        cases[3].json[i] = statistics_json(nc_dimension_experiment(dp, t));
        cases[4].name = "local-limit-oracle";
        cases[4].json[i] = statistics_json(
            local_limit_oracle(0.002, {0.0625}, 1.0, 250, 1e-5, RngSpec{seed, 0}, t));
        cases[5].name = "local-limit";
        SheetParams lp;
        lp.n = 16;
        lp.x_grid = make_grid(-1.0, 2.0 / 256.0, 257);
        lp.dx_env = 0.05;
        lp.rng = RngSpec{seed, 0};
        cases[5].json[i] = statistics_json(local_limit_experiment(
            lp, parse_stop_rule("tau_lambda(-0.5)"), {0.25}, 1.0, 200, t));
    }
    std::string bad;
    for (const auto& c : cases)
        if (c.json[0] != c.json[1] || c.json[0] != c.json[2]) bad += std::string(" ") + c.name;
    if (bad.empty())
        return {true, "6 experiment families x threads {1,3,8}: statistics byte-identical"};
    return {false, "statistics differ across thread counts for:" + bad};
}

} // namespace

int main(int argc, char** argv) {
    int criterion = 0;
    std::uint64_t seed = 20250822;
    unsigned threads = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const char* value = (i + 1 < argc) ? argv[i + 1] : nullptr;
        if (arg == "--criterion" && value) {
            criterion = std::atoi(value);
            ++i;
        } else if (arg == "--seed" && value) {
            seed = std::strtoull(value, nullptr, 10);
            ++i;
        } else if (arg == "--threads" && value) {
            threads = static_cast<unsigned>(std::atoi(value));
            ++i;
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--seed S] [--threads T]\n");
            return 2;
        }
    }
    if (criterion < 0 || criterion > 8) {
        std::fprintf(stderr, "criterion must be in [0, 8]\n");
        return 2;
    }

    struct Entry {
        int number;
        const char* label;
        Outcome (*run)(std::uint64_t, unsigned);
    };
    const Entry entries[] = {
        {1, "randomized passage identities", criterion_1},
        {2, "pinned fixture ledger", criterion_2},
        {3, "running-max local time", criterion_3},
        {4, "calibration dimensions", criterion_4},
        {5, "increase-set dimension", criterion_5},
        {6, "stopped local limits", criterion_6},
        {7, "mean growth slope", criterion_7},
        {8, "thread determinism", criterion_8},
    };

    bool all_pass = true;
    for (const Entry& e : entries) {
        if (criterion != 0 && criterion != e.number) continue;
        Outcome out;
        try {
            out = e.run(seed, threads);
        } catch (const std::exception& ex) {
            out = {false, strf("exception: %s", ex.what())};
        }
        all_pass = all_pass && out.pass;
        std::printf("criterion %d (%s): %s -- %s\n", e.number, e.label,
                    out.pass ? "PASS" : "FAIL", out.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
