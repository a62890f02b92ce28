#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lpplab/ensemble.hpp"

namespace lpplab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct LatticePoint {
    std::size_t grid_index = 0;
    std::size_t line_index = 1; // 1 = top line
};

/*
 * A real-valued function on a contiguous stretch of grid points; values[j]
 * sits at grid point offset + j. Profiles keep the parent grid so passage
 * values computed from interior columns need no re-gridding.
 */
struct Profile {
    Grid grid;
    std::size_t offset = 0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t j) const { return grid.point(offset + j); }
    std::size_t last_grid_index() const { return offset + values.size() - 1; }
    double at_grid_index(std::size_t grid_index) const { return values.at(grid_index - offset); }
};

/*
 * An up-right path from start to end recorded by jump times: jump_indices =
 * [t_n, ..., t_{m+1}] where the path leaves line i at grid index t_i, with
 * n = start.line_index, m = end.line_index. Entries are non-decreasing and
 * repeated indices encode vertical stretches.
 */
struct Geodesic {
    LatticePoint start;
    LatticePoint end;
    std::vector<std::size_t> jump_indices;
};

// One value per line 1..k at a fixed column; values[i-1] = b_i.
struct BoundaryData {
    std::size_t column_index = 0;
    std::vector<double> values;
};

/*
 * The single recursion step every passage value goes through. With
 * inc(j) = row[j] - row[0] (row pre-shifted to the anchor column),
 *   acc[j] <- inc(j) + max(base, max_{s <= j}(acc_old[s] - inc(s))).
 * Passing acc_old = -inf with base 0 yields the bottom-line base case
 * acc = inc, so materialized and streaming callers share one code path
 * and produce bit-identical values.
 */
void lpp_pass(double* acc, const double* row, std::size_t len, double base);

/*
 * Passage values from `start` to every grid point on `target_line`:
 * x -> f[(y,n) -> (x,m)] for x >= y. Maxima over jump times are taken over
 * grid points, which is exact for piecewise-linear rows.
 */
Profile lpp_profile(const LineEnsemble& env, LatticePoint start, std::size_t target_line);

double lpp_value(const LineEnsemble& env, LatticePoint start, LatticePoint end);

/*
 * Leftmost maximizing path: each jump index is the smallest grid index
 * achieving the DP maximum, resolved backward from the end.
 */
Geodesic geodesic(const LineEnsemble& env, LatticePoint start, LatticePoint end);

// Sum of per-line increments along the path; equals lpp_value at the endpoints.
double geodesic_weight(const LineEnsemble& env, const Geodesic& g);

// CSV body "x,value", one row per grid point.
std::string profile_csv(const Profile& p);

// CSV body "line_index,jump_x", one row per jump, start line first.
std::string geodesic_csv(const LineEnsemble& env, const Geodesic& g);

// PT(f1,f2)(x) = f1(x) + max_{s <= x}(f2(s) - f1(s)), maxima over grid points.
Profile pitman_transform(const Profile& f1, const Profile& f2);

/*
 * Boundary-respecting passage values from the boundary column rightward:
 * Z_i(x) = max_{i <= j <= k} { b_j + f[(lambda,j) -> (lambda+x,i)] } where
 * k = boundary.values.size(), computed by repeated lpp_pass with base b_j.
 */
Profile lpp_profile_with_boundary(const LineEnsemble& env, const BoundaryData& boundary,
                                  std::size_t target_line);

} // namespace lpplab
