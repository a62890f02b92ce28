#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lpplab/lpp.hpp"
#include "lpplab/report.hpp"
#include "lpplab/sheet.hpp"

namespace lpplab {

// Boolean indicator per grid cell [point(i), point(i+1)].
struct PointMask {
    Grid grid;
    std::vector<bool> mask; // size n_points - 1
};

/*
 * Box-counting record: counts[i] boxes of size scales[i] touch the flagged
 * set. The fit drops levels with fewer than 4 boxes (saturated, they flatten
 * the line) unless that would leave fewer than two levels; scales and counts
 * always list every requested level.
 */
struct DimensionFit {
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    double slope = 0.0;
    double r_squared = 0.0;
};

// M(x_j) = max_{i <= j} p(x_i).
Profile running_max(const Profile& p);

/*
 * Occupation-time estimate of local time at zero:
 * L(t_j) = (dx / 2*epsilon) * #{i < j : |path(t_i)| < epsilon}.
 * Counts strict inequality at cell left endpoints; bias O(dx/epsilon).
 */
Profile local_time_occupation(const Profile& path, double epsilon);

// mask[i] = (D(x_{i+1}) - D(x_i) > tol).
PointMask nc_mask(const Profile& D, double tol);

// 1e-7 * max(1, max|D|): well above roundoff on coalesced stretches, well
// below genuine increments at the default grids.
double default_nc_tol(const Profile& D);

// Boxes of size domain*base^{-k} aligned to the grid, k in [k_min, k_max];
// a box counts if it meets a flagged cell. Throws if no cell is flagged.
std::vector<std::size_t> box_counts(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                                    std::size_t base = 2);

std::vector<double> box_scales(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                               std::size_t base = 2);

// Least squares of log N on log(1/scale) with the saturation drop above.
DimensionFit fit_box_dimension(std::vector<double> scales, std::vector<std::size_t> counts);

DimensionFit box_dimension(const PointMask& mask, std::size_t k_min, std::size_t k_max,
                           std::size_t base = 2);

/*
 * Running maximum M(t_max) versus the occupation estimator L(t_max) on an
 * independent path, `replicas` of each. The occupation estimator measures
 * plain time density; the local time that pairs with the running maximum
 * accrues per unit quadratic variation, so L is scaled by `rate` before the
 * comparison. Reports two-sample KS(M, L), one-sample KS of M against the
 * half-normal law of scale sqrt(rate*t_max), and the mean of M.
 */
ExperimentReport levy_experiment(double rate, double t_max, double dx, double epsilon,
                                 std::size_t replicas, const RngSpec& rng, unsigned threads = 0);

enum class StopKind { TauLambda, Rho, RhoC, Xi };

/*
 * Where to read off the local limit:
 *   tau_lambda(l) first cell at or after l whose increment exceeds tol;
 *                 forward increments are measured from that cell's left
 *                 endpoint value, the onset of the increase
 *   rho(h)        first cell whose right endpoint reaches absolute level h
 *   rho_c(c,h)    first cell at or after c reaching D(c) + h
 *   xi(c,d)       level D(c) + U, U uniform on [0, D(d) - D(c)] per replica
 * Level rules measure forward increments from the level itself: the
 * continuum stop value equals the level, while the cell's left endpoint
 * sits below it by the in-cell overshoot.
 */
struct StopRule {
    StopKind kind = StopKind::TauLambda;
    double a = 0.0;
    double b = 0.0;
};

// Accepts "tau_lambda(-0.5)", "rho(0.5)", "rho_c(-0.5,0.75)", "xi(-0.5,0.5)".
StopRule parse_stop_rule(const std::string& text);
std::string stop_rule_name(const StopRule& rule);

/*
 * Per replica: simulate the difference profile, stop per `stop_rule`, and
 * collect eps^{-1/2} * (D(tau + eps*t_eval) - base) for each eps, with the
 * base as documented on StopRule. Samples are tested against the half-normal
 * law with sigma^2 = 4*t_eval. Replicas where the rule does not trigger
 * inside the window (or, for xi, where D(d) - D(c) <= tol) are counted and
 * excluded. Throws if the smallest eps*t_eval falls below the x-grid spacing
 * instead of aliasing.
 */
ExperimentReport local_limit_experiment(const SheetParams& params, const StopRule& stop_rule,
                                        const std::vector<double>& eps_list, double t_eval,
                                        std::size_t replicas, unsigned threads = 0);

/*
 * Harness calibration: the profile is replaced by the running maximum of an
 * exact rate-four Brownian path sampled at spacing dx, for which the limit
 * law holds at every eps by diffusive scaling. Same stop semantics as
 * tau_lambda with tol = 0.
 */
ExperimentReport local_limit_oracle(double lambda, const std::vector<double>& eps_list,
                                    double t_eval, std::size_t replicas, double dx,
                                    const RngSpec& rng, unsigned threads = 0);

} // namespace lpplab
