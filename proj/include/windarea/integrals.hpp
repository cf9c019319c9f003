#ifndef WINDAREA_INTEGRALS_HPP
#define WINDAREA_INTEGRALS_HPP

#include <windarea/area_measure.hpp>
#include <windarea/curves.hpp>
#include <windarea/error.hpp>
#include <windarea/numeric.hpp>
#include <windarea/path.hpp>
#include <windarea/winding.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace windarea {

enum class scheme { left_point, trapezoid };

inline std::string_view scheme_name(scheme s) noexcept {
    return s == scheme::left_point ? "left_point" : "trapezoid";
}

struct integral_result {
    double value = 0.0;
    scheme used = scheme::left_point;
    std::size_t dissection_size = 0;
    double diagnostic = 0.0;          // max successive change over the last 3 sums
    bool converged = true;            // false flags NonConvergent
    std::vector<double> level_values; // one Riemann sum per dissection
};

/// Exact line integral of x dy along the polyline (chord excluded).
inline double line_integral_x_dy(const planar_path &path) {
    const auto &p = path.points();
    return pairwise_sum(0, path.last(), [&](std::size_t i) {
        return 0.5 * (p[i].x + p[i + 1].x) * (p[i + 1].y - p[i].y);
    });
}

/// Left-point (Ito) sum of x dy over the vertices.
inline double ito_sum(const planar_path &path) {
    const auto &p = path.points();
    return pairwise_sum(0, path.last(), [&](std::size_t i) { return p[i].x * (p[i + 1].y - p[i].y); });
}

/// Right-point sum of x dy over the vertices.
inline double right_point_sum(const planar_path &path) {
    const auto &p = path.points();
    return pairwise_sum(0, path.last(), [&](std::size_t i) { return p[i + 1].x * (p[i + 1].y - p[i].y); });
}

/// Levy area: the scheme's integral of x dy minus the chord term
/// (x_0 + x_n)/2 (y_n - y_0). Computed in coordinates relative to the first
/// vertex; the value is translation invariant.
inline double levy_area(const planar_path &path, scheme s = scheme::trapezoid) {
    const auto &p = path.points();
    const point o = p.front();
    const double integral = pairwise_sum(0, path.last(), [&](std::size_t i) {
        const double x0 = p[i].x - o.x;
        const double x1 = p[i + 1].x - o.x;
        const double dy = p[i + 1].y - p[i].y;
        return (s == scheme::trapezoid ? 0.5 * (x0 + x1) : x0) * dy;
    });
    const double xn = p.back().x - o.x;
    const double yn = p.back().y - o.y;
    return integral - 0.5 * xn * yn;
}

/// Signed area of the chord-closed polygon (shoelace formula), which is the
/// integral of the winding number over the plane.
inline double shoelace_area(const planar_path &path) {
    const auto &p = path.points();
    const point o = p.front();
    return 0.5 * pairwise_sum(0, path.closed_edge_count(), [&](std::size_t i) {
               const auto [a, b] = path.closed_edge(i);
               return (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
           });
}

namespace detail {

// Piecewise-linear interpolant of (times, values) at t.
inline double interpolate(std::span<const double> times, std::span<const double> values, double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return values.front();
    if (it == times.end()) return values.back();
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    const double t0 = times[j - 1], t1 = times[j];
    if (t == t0) return values[j - 1];
    const double w = (t - t0) / (t1 - t0);
    return values[j - 1] + w * (values[j] - values[j - 1]);
}

} // namespace detail

/// Young integral of x dy by left-point Riemann sums along a refining
/// sequence of dissections. x and y are read as piecewise linear in t over
/// `times`, so a dissection may be finer than the data. The value is the
/// sum on the last dissection; `converged` is false when the largest change
/// over the last three sums exceeds `tolerance`.
inline integral_result young_integral(std::span<const double> times, std::span<const double> x,
                                      std::span<const double> y, const std::vector<dissection> &refinement,
                                      double tolerance = 1e-6) {
    if (times.size() != x.size() || x.size() != y.size() || x.size() < 2)
        throw error(errc::bad_range, "series must have equal length >= 2");
    if (refinement.empty()) throw error(errc::bad_range, "need at least one dissection");
    integral_result r;
    r.used = scheme::left_point;
    for (const auto &d : refinement) {
        const auto &t = d.times();
        std::vector<double> xs(t.size()), ys(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            xs[k] = detail::interpolate(times, x, t[k]);
            ys[k] = detail::interpolate(times, y, t[k]);
        }
        r.level_values.push_back(
            pairwise_sum(0, t.size() - 1, [&](std::size_t k) { return xs[k] * (ys[k + 1] - ys[k]); }));
    }
    r.value = r.level_values.back();
    r.dissection_size = refinement.back().size();
    const std::size_t n = r.level_values.size();
    for (std::size_t k = n >= 3 ? n - 2 : 1; k < n; ++k)
        r.diagnostic = std::max(r.diagnostic, std::abs(r.level_values[k] - r.level_values[k - 1]));
    r.converged = r.diagnostic <= tolerance;
    return r;
}

/// Series with implicit uniform times i / (n - 1).
inline integral_result young_integral(std::span<const double> x, std::span<const double> y,
                                      const std::vector<dissection> &refinement, double tolerance = 1e-6) {
    std::vector<double> times(x.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = static_cast<double>(i) / static_cast<double>(times.size() - 1);
    if (!times.empty()) times.back() = 1.0;
    return young_integral(times, x, y, refinement, tolerance);
}

/// Dyadic dissections {k / 2^level} for each level in [lo, hi].
inline std::vector<dissection> dyadic_refinement(unsigned lo, unsigned hi) {
    std::vector<dissection> out;
    for (unsigned level = lo; level <= hi; ++level) {
        const std::size_t n = std::size_t{1} << level;
        std::vector<double> t(n + 1);
        for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / static_cast<double>(n);
        out.emplace_back(std::move(t));
    }
    return out;
}

struct stokes_report {
    double levy = 0.0;          // trapezoid Levy area of the path
    double grid_integral = 0.0; // cell area x sum of unmasked values
    double residual = 0.0;
    double bound = 0.0;
    std::int32_t max_abs_winding = 0;
    double masked_area = 0.0;
};

/// Grid-bias diagnostic for the Stokes identity between the Levy area and
/// the integral of the winding field. The bound charges every masked cell
/// and every cell within one cell of the curve the largest |theta|.
inline stokes_report stokes_residual(const planar_path &path, const winding_field &field) {
    stokes_report r;
    r.levy = levy_area(path, scheme::trapezoid);
    std::int64_t sum = 0;
    std::int32_t max_all = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const std::int32_t v = field.values[i];
        max_all = std::max(max_all, v < 0 ? -v : v);
        if (!field.mask[i]) sum += v;
    }
    r.grid_integral = static_cast<double>(sum) * field.grid.cell_area();
    r.residual = std::abs(r.levy - r.grid_integral);
    r.max_abs_winding = max_all;
    r.masked_area = field.masked_area();
    r.bound = (r.masked_area + curve_length(path) * field.grid.cell) * static_cast<double>(max_all);
    return r;
}

} // namespace windarea

#endif
