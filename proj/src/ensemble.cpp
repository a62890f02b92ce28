#include "lpplab/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lpplab {

std::vector<double> sample_brownian_row(const Grid& grid, double rate,
                                        const RngSpec& rng, std::uint64_t row) {
    RngStream stream(rng, /*substream=*/row);
    const double step_sd = std::sqrt(rate * grid.dx);
    std::vector<double> values(grid.n_points);
    values[0] = 0.0;
    for (std::size_t i = 1; i < grid.n_points; ++i)
        values[i] = values[i - 1] + step_sd * stream.next_gaussian();
    return values;
}

LineEnsemble sample_brownian_lines(const Grid& grid, std::size_t k, double rate,
                                   const RngSpec& rng) {
    if (k < 1) throw std::invalid_argument("sample_brownian_lines: k must be >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("sample_brownian_lines: rate must be > 0");
    LineEnsemble env;
    env.grid = grid;
    env.rate = rate;
    env.lines.reserve(k);
    for (std::size_t r = 0; r < k; ++r)
        env.lines.push_back(sample_brownian_row(grid, rate, rng, r));
    return env;
}

LineEnsemble fixture_ensemble(const std::string& name) {
    if (name == "E2") {
        LineEnsemble env;
        env.grid = make_grid(0.0, 0.5, 3);
        env.lines = {{0.0, 1.0, 1.0}, {0.0, -1.0, 2.0}};
        env.rate = 0.0;
        return env;
    }
    throw std::invalid_argument("fixture_ensemble: unknown fixture \"" + name +
                                "\" (grid-free form serves \"E2\" only)");
}

LineEnsemble fixture_ensemble(const std::string& name, const Grid& grid, std::size_t k) {
    if (k < 1) throw std::invalid_argument("fixture_ensemble: k must be >= 1");
    LineEnsemble env;
    env.grid = grid;
    env.rate = 0.0;
    if (name == "linear") {
        std::vector<double> row(grid.n_points);
        for (std::size_t i = 0; i < grid.n_points; ++i) row[i] = grid.point(i) - grid.x0;
        env.lines.assign(k, row);
        return env;
    }
    if (name == "constant") {
        env.lines.assign(k, std::vector<double>(grid.n_points, 0.0));
        return env;
    }
    if (name == "E2") return fixture_ensemble("E2");
    throw std::invalid_argument("fixture_ensemble: unknown fixture \"" + name + "\"");
}

LineEnsemble refine_ensemble(const LineEnsemble& env, std::size_t factor) {
    if (factor < 1) throw std::invalid_argument("refine_ensemble: factor must be >= 1");
    if (factor == 1) return env;
    const Grid& g = env.grid;
    Grid fine = make_grid(g.x0, g.dx / static_cast<double>(factor),
                          (g.n_points - 1) * factor + 1);
    LineEnsemble out;
    out.grid = fine;
    out.rate = env.rate;
    out.lines.reserve(env.lines.size());
    for (const auto& row : env.lines) {
        std::vector<double> fine_row(fine.n_points);
        for (std::size_t i = 0; i + 1 < g.n_points; ++i) {
            for (std::size_t j = 0; j < factor; ++j) {
                const double t = static_cast<double>(j) / static_cast<double>(factor);
                fine_row[i * factor + j] = row[i] + t * (row[i + 1] - row[i]);
            }
        }
        fine_row[fine.n_points - 1] = row[g.n_points - 1];
        out.lines.push_back(std::move(fine_row));
    }
    return out;
}

namespace {

void append_g17(std::string& buf, double v) {
    char tmp[40];
    std::snprintf(tmp, sizeof tmp, "%.17g", v);
    buf += tmp;
}

} // namespace

void write_ensemble_csv(std::ostream& out, const LineEnsemble& env) {
    std::string buf = "x";
    for (std::size_t r = 0; r < env.line_count(); ++r) {
        buf += ",f" + std::to_string(r + 1);
    }
    buf += '\n';
    for (std::size_t i = 0; i < env.grid.n_points; ++i) {
        append_g17(buf, env.grid.point(i));
        for (const auto& row : env.lines) {
            buf += ',';
            append_g17(buf, row[i]);
        }
        buf += '\n';
    }
    out << buf;
}

LineEnsemble read_ensemble_csv(std::istream& in) {
    std::string line;
    // Skip comment lines, then require the header.
    do {
        if (!std::getline(in, line)) throw std::runtime_error("ensemble CSV: missing header");
    } while (!line.empty() && line[0] == '#');
    std::size_t k = 0;
    for (char c : line)
        if (c == ',') ++k;
    if (k < 1) throw std::runtime_error("ensemble CSV: header needs x plus at least one line");

    std::vector<double> xs;
    std::vector<std::vector<double>> cols(k);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, ',')) throw std::runtime_error("ensemble CSV: bad row");
        xs.push_back(std::stod(field));
        for (std::size_t c = 0; c < k; ++c) {
            if (!std::getline(row, field, ','))
                throw std::runtime_error("ensemble CSV: short row");
            cols[c].push_back(std::stod(field));
        }
    }
    if (xs.size() < 2) throw std::runtime_error("ensemble CSV: need at least two grid points");

    LineEnsemble env;
    env.grid = make_grid(xs.front(), (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1),
                         xs.size());
    env.lines = std::move(cols);
    env.rate = 0.0;
    return env;
}

} // namespace lpplab
