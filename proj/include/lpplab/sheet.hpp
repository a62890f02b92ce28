#pragma once

#include <cstddef>
#include <vector>

#include "lpplab/lpp.hpp"
#include "lpplab/report.hpp"

namespace lpplab {

/*
 * Parameters of the scaled-coordinate experiments. A point (y, x) in sheet
 * units maps to environment positions 2*y*n^{2/3} (start, on line n) and
 * n + 2*x*n^{2/3} (end, on line 1); values are recentred by
 * 2n + 2(x-y)*n^{2/3} and divided by n^{1/3}. The environment is n
 * independent rate-one lines on a grid of spacing dx_env.
 */
struct SheetParams {
    std::size_t n = 128;
    double y_a = -0.25;
    double y_b = 0.25;
    Grid x_grid = make_grid(-1.0, 2.0 / 4096.0, 4097); // evaluation points, sheet units
    double dx_env = 2e-3;
    RngSpec rng;
};

// n^{1/3} and n^{2/3} via cbrt, so every caller scales identically.
double depth_cbrt(std::size_t n);

// Environment window covering both starts and every end point of x_grid.
Grid environment_grid(const SheetParams& params);

// Materialized environment for the window: params.n rate-one lines.
LineEnsemble sample_sheet_environment(const SheetParams& params);

/*
 * Scaled passage value from (y, line n) to (x, line 1). Positions snap to the
 * nearest environment grid point (snap distance < dx_env/2 by construction).
 */
double sheet_value(const LineEnsemble& env, const SheetParams& params, double y, double x);

/*
 * D(x) = sheet_value(y_b, x) - sheet_value(y_a, x) on one shared environment;
 * the centerings cancel except for the constant 2*(y_b - y_a)*n^{1/3}.
 * Streams the environment row by row (memory stays O(window)), with values
 * bit-identical to the materialized overload below for equal parameters.
 */
Profile difference_profile(const SheetParams& params);

// Same computation on a caller-supplied environment (fixtures, equivalence tests).
Profile difference_profile_on(const LineEnsemble& env, const SheetParams& params);

// Streaming difference values at arbitrary sheet coordinates xs, each inside
// [x_grid.front(), x_grid.back()].
std::vector<double> difference_values(const SheetParams& params, const std::vector<double>& xs);

/*
 * Finite-depth boundary data at a column: b_i = f[start -> (column, i)] -
 * f[start -> (column, 1)] for i = 1..k, so b_1 = 0 and b is non-increasing.
 * No cross-column normalizer is added; consumers only ever compare b_i
 * within one column, where identities are invariant under a common shift.
 */
BoundaryData boundary_data(const LineEnsemble& env, LatticePoint start, std::size_t column,
                           std::size_t k);

// Z_1..Z_k rightward from the boundary column; Z_i >= Z_{i+1} pointwise.
std::vector<Profile> z_processes(const LineEnsemble& env, const BoundaryData& boundary);

// Smallest j attaining max_j { b_j + f[(column, j) -> (x, 1)] }.
std::size_t maximizer_index(const LineEnsemble& env, const BoundaryData& boundary,
                            std::size_t x_index);

/*
 * Mean difference-profile value at each M in M_list over independent
 * replicas, with the least-squares slope of mean D(M) against M compared to
 * the target 2*(y_b - y_a). Replica r owns stream params.rng.stream_index + r.
 */
ExperimentReport growth_experiment(const SheetParams& params, const std::vector<double>& M_list,
                                   std::size_t replicas, unsigned threads = 0);

} // namespace lpplab
