#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace lpplab {

/*
 * Uniform grid on [x0, x0 + (n_points-1)*dx].
 *
 * point(i) is computed as x0 + i*dx directly (never by repeated addition),
 * so grid coordinates are bit-reproducible regardless of traversal order.
 */
struct Grid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n_points = 2;

    double point(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double front() const { return x0; }
    double back() const { return point(n_points - 1); }
    double length() const { return static_cast<double>(n_points - 1) * dx; }
    std::size_t cell_count() const { return n_points - 1; }

    // Nearest grid index to x, clamped to the grid.
    std::size_t nearest_index(double x) const {
        double t = (x - x0) / dx;
        if (t <= 0.0) return 0;
        double r = std::round(t);
        std::size_t i = static_cast<std::size_t>(r);
        return i >= n_points ? n_points - 1 : i;
    }

    bool operator==(const Grid&) const = default;
};

inline Grid make_grid(double x0, double dx, std::size_t n_points) {
    if (!(dx > 0.0)) throw std::invalid_argument("make_grid: dx must be > 0");
    if (n_points < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    if (!std::isfinite(x0) || !std::isfinite(dx))
        throw std::invalid_argument("make_grid: non-finite bounds");
    return Grid{x0, dx, n_points};
}

} // namespace lpplab
