#include "lpplab/lpp.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpplab/report.hpp"

namespace lpplab {

namespace {

void check_point(const LineEnsemble& env, LatticePoint p, const char* what) {
    if (p.line_index < 1 || p.line_index > env.line_count())
        throw std::invalid_argument(std::string(what) + ": line index out of range");
    if (p.grid_index >= env.grid.n_points)
        throw std::invalid_argument(std::string(what) + ": grid index out of range");
}

} // namespace

void lpp_pass(double* acc, const double* row, std::size_t len, double base) {
    const double anchor = row[0];
    double m = base;
    for (std::size_t j = 0; j < len; ++j) {
        const double inc = row[j] - anchor;
        const double t = acc[j] - inc;
        if (t > m) m = t;
        acc[j] = inc + m;
    }
}

Profile lpp_profile(const LineEnsemble& env, LatticePoint start, std::size_t target_line) {
    check_point(env, start, "lpp_profile");
    if (target_line < 1 || target_line > start.line_index)
        throw std::invalid_argument("lpp_profile: paths run upward, need 1 <= target_line <= start line");
    const std::size_t len = env.grid.n_points - start.grid_index;
    std::vector<double> acc(len, kNegInf);
    for (std::size_t j = start.line_index; j >= target_line; --j) {
        const double* row = env.lines[j - 1].data() + start.grid_index;
        lpp_pass(acc.data(), row, len, j == start.line_index ? 0.0 : kNegInf);
    }
    return Profile{env.grid, start.grid_index, std::move(acc)};
}

double lpp_value(const LineEnsemble& env, LatticePoint start, LatticePoint end) {
    check_point(env, start, "lpp_value");
    check_point(env, end, "lpp_value");
    if (end.grid_index < start.grid_index || end.line_index > start.line_index)
        throw std::invalid_argument("lpp_value: end must lie up-right of start");
    const std::size_t len = end.grid_index - start.grid_index + 1;
    std::vector<double> acc(len, kNegInf);
    for (std::size_t j = start.line_index; j >= end.line_index; --j) {
        const double* row = env.lines[j - 1].data() + start.grid_index;
        lpp_pass(acc.data(), row, len, j == start.line_index ? 0.0 : kNegInf);
    }
    return acc[len - 1];
}

Geodesic geodesic(const LineEnsemble& env, LatticePoint start, LatticePoint end) {
    check_point(env, start, "geodesic");
    check_point(env, end, "geodesic");
    if (end.grid_index < start.grid_index || end.line_index > start.line_index)
        throw std::invalid_argument("geodesic: end must lie up-right of start");

    // Snapshot the accumulator after each line so the backward sweep can
    // recover argmaxes; levels[j - m] holds the profile of line j.
    const std::size_t n = start.line_index, m = end.line_index;
    const std::size_t len = end.grid_index - start.grid_index + 1;
    std::vector<std::vector<double>> levels(n - m + 1);
    std::vector<double> acc(len, kNegInf);
    for (std::size_t j = n; j >= m; --j) {
        const double* row = env.lines[j - 1].data() + start.grid_index;
        lpp_pass(acc.data(), row, len, j == start.line_index ? 0.0 : kNegInf);
        levels[j - m] = acc;
    }

    Geodesic g{start, end, {}};
    g.jump_indices.reserve(n - m);
    std::size_t limit = len - 1;
    for (std::size_t j = m; j < n; ++j) {
        const double* row = env.lines[j - 1].data() + start.grid_index;
        const double anchor = row[0];
        const std::vector<double>& above = levels[j + 1 - m];
        double best = kNegInf;
        std::size_t arg = 0;
        for (std::size_t s = 0; s <= limit; ++s) {
            const double cand = above[s] - (row[s] - anchor);
            if (cand > best) {
                best = cand;
                arg = s;
            }
        }
        g.jump_indices.push_back(start.grid_index + arg);
        limit = arg;
    }
    std::reverse(g.jump_indices.begin(), g.jump_indices.end());
    return g;
}

double geodesic_weight(const LineEnsemble& env, const Geodesic& g) {
    const std::size_t n = g.start.line_index, m = g.end.line_index;
    if (g.jump_indices.size() != n - m)
        throw std::invalid_argument("geodesic_weight: jump count must equal line span");
    double w = 0.0;
    // jump_indices = [t_n, ..., t_{m+1}]; line i runs from t_{i+1} to t_i
    // with t_{n+1} = start and t_m = end.
    std::size_t from = g.start.grid_index;
    for (std::size_t i = n; i >= m; --i) {
        const std::size_t to =
            i == m ? g.end.grid_index : g.jump_indices[n - i];
        const std::vector<double>& row = env.line(i);
        w += row[to] - row[from];
        from = to;
    }
    return w;
}

Profile pitman_transform(const Profile& f1, const Profile& f2) {
    if (!(f1.grid == f2.grid) || f1.offset != f2.offset || f1.size() != f2.size())
        throw std::invalid_argument("pitman_transform: profiles must share a grid range");
    Profile out{f1.grid, f1.offset, std::vector<double>(f1.size())};
    double m = kNegInf;
    for (std::size_t j = 0; j < f1.size(); ++j) {
        const double d = f2.values[j] - f1.values[j];
        if (d > m) m = d;
        out.values[j] = f1.values[j] + m;
    }
    return out;
}

Profile lpp_profile_with_boundary(const LineEnsemble& env, const BoundaryData& boundary,
                                  std::size_t target_line) {
    const std::size_t k = boundary.values.size();
    if (k == 0 || k > env.line_count())
        throw std::invalid_argument("lpp_profile_with_boundary: boundary length must be in [1, k]");
    if (target_line < 1 || target_line > k)
        throw std::invalid_argument("lpp_profile_with_boundary: target line outside boundary range");
    if (boundary.column_index >= env.grid.n_points)
        throw std::invalid_argument("lpp_profile_with_boundary: column out of range");
    const std::size_t len = env.grid.n_points - boundary.column_index;
    std::vector<double> acc(len, kNegInf);
    for (std::size_t j = k; j >= target_line; --j) {
        const double* row = env.lines[j - 1].data() + boundary.column_index;
        lpp_pass(acc.data(), row, len, boundary.values[j - 1]);
    }
    return Profile{env.grid, boundary.column_index, std::move(acc)};
}

std::string profile_csv(const Profile& p) {
    std::string out = "x,value\n";
    for (std::size_t j = 0; j < p.size(); ++j)
        out += format_double(p.x(j)) + "," + format_double(p.values[j]) + "\n";
    return out;
}

std::string geodesic_csv(const LineEnsemble& env, const Geodesic& g) {
    std::string out = "line_index,jump_x\n";
    for (std::size_t j = 0; j < g.jump_indices.size(); ++j) {
        const std::size_t line = g.start.line_index - j;
        out += std::to_string(line) + "," + format_double(env.grid.point(g.jump_indices[j])) +
               "\n";
    }
    return out;
}

} // namespace lpplab
