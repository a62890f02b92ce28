#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpplab/fractal.hpp"
#include "lpplab/report.hpp"
#include "lpplab/sheet.hpp"

namespace lpplab {

/*
 * Hand-checked facts on the canonical three-point two-line fixture: passage
 * values, geodesic jump, Pitman transform, boundary data, Z processes,
 * maximizer picks and the raw difference profile. All target values are
 * dyadic (or survive rounding bit for bit), so comparisons are exact except
 * the 0.3-shift law, which gets a 1e-12 envelope. Returns the number of
 * failed facts; appends one line per failure when `failures` is non-null.
 */
std::size_t e2_ledger_violations(std::vector<std::string>* failures = nullptr);

/*
 * Randomized structural identities of the passage DP on small Brownian
 * ensembles: path crossing, column decomposition, superadditivity, the
 * Pitman shift and two-line profile laws, Z recursion against its direct
 * definition, boundary monotonicity and exchange ordering, maximizer
 * monotonicity in x and in the start point, and difference-profile
 * monotonicity. Gaps are scaled by max(1, |a|, |b|) and allowed 1e-9; the
 * report carries one violation counter per identity plus the worst
 * discrepancy seen.
 * Deliberately single threaded so the runtime criterion measures one core.
 */
ExperimentReport identities_experiment(std::size_t count, std::uint64_t seed);

struct DimensionParams {
    SheetParams sheet;
    std::size_t replicas = 50;
    std::size_t k_min = 3;
    std::size_t k_max = 10;
    double calib_dx = 1e-6;
    double calib_epsilon = 3e-3;
    std::size_t calib_replicas = 20;
};

// Exact middle-thirds mask: cell i flagged iff every base-3 digit of i
// (depth digits) is 0 or 2. Box counts at base 3 are exactly 2^k.
PointMask cantor_mask(std::size_t depth);

/*
 * Box dimension of the near-zero set {t : |B(t)| < epsilon} of a rate-1 path
 * on [0,1], pooled over replicas. Levels stop where boxes would sink below
 * the blur width epsilon.
 */
ExperimentReport zero_set_calibration(double dx, double epsilon, std::size_t replicas,
                                      const RngSpec& rng, unsigned threads = 0);

// Box dimension of the increase set of D, pooled over replicas, with a
// tolerance sensitivity sweep (x10 and /10) on the flagged-cell count.
ExperimentReport nc_dimension_experiment(const DimensionParams& params, unsigned threads = 0);

// Middle-thirds oracle, zero-set calibration, then the increase-set
// measurement; passes only when all three gates hold.
ExperimentReport dimension_experiment(const DimensionParams& params, unsigned threads = 0);

} // namespace lpplab
