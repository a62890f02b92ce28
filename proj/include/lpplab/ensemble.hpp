#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpplab/grid.hpp"
#include "lpplab/rng.hpp"

namespace lpplab {

/*
 * An ordered family of continuous piecewise-linear functions on a common grid.
 * Row 0 of `lines` is line 1 (the top line); line indices in the public API
 * are 1-based throughout. Between grid points each row is interpreted
 * linearly, which makes the passage-time recursions over grid points exact
 * for the stored environment.
 *
 * `rate` is the variance per unit time of the generating process (0 for
 * deterministic fixtures).
 */
struct LineEnsemble {
    Grid grid;
    std::vector<std::vector<double>> lines; // lines[r] is line r+1
    double rate = 0.0;

    std::size_t line_count() const { return lines.size(); }

    // 1-based line index.
    const std::vector<double>& line(std::size_t line_index) const {
        return lines[line_index - 1];
    }
    double value(std::size_t line_index, std::size_t grid_index) const {
        return lines[line_index - 1][grid_index];
    }
};

/*
 * k independent lines with Gaussian increments of mean 0 and variance
 * rate*dx between consecutive grid points, each anchored at 0 on the left
 * (passage values use only increments, so anchoring loses nothing).
 * Row r draws from substream r of `rng`, so row content does not depend on
 * the order rows are generated in.
 */
LineEnsemble sample_brownian_lines(const Grid& grid, std::size_t k, double rate,
                                   const RngSpec& rng);

// One row of sample_brownian_lines, for callers that stream rows instead of
// materializing the whole ensemble. Bit-identical to row `row` of the full sample.
std::vector<double> sample_brownian_row(const Grid& grid, double rate,
                                        const RngSpec& rng, std::uint64_t row);

/*
 * Deterministic fixtures.
 *   "E2"       two lines on grid {0, 0.5, 1.0}: f1 = [0, 1, 1], f2 = [0, -1, 2]
 *   "linear"   k copies of f(t) = t - x0 on the given grid
 *   "constant" k identically-zero lines
 * The one-argument overload serves "E2" only; unknown names throw.
 */
LineEnsemble fixture_ensemble(const std::string& name);
LineEnsemble fixture_ensemble(const std::string& name, const Grid& grid, std::size_t k);

// Piecewise-linear resampling onto a grid refined `factor` times. Exact for
// the stored environment: all original breakpoints are retained.
LineEnsemble refine_ensemble(const LineEnsemble& env, std::size_t factor);

// CSV: header `x,f1,...,fk`, one row per grid point, 17 significant digits.
void write_ensemble_csv(std::ostream& out, const LineEnsemble& env);
LineEnsemble read_ensemble_csv(std::istream& in);

} // namespace lpplab
