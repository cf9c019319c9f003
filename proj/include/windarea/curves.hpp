#ifndef WINDAREA_CURVES_HPP
#define WINDAREA_CURVES_HPP

#include <windarea/error.hpp>
#include <windarea/numeric.hpp>
#include <windarea/path.hpp>
#include <windarea/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace windarea {

/// Planar Brownian motion on [0, 1] sampled at `steps` uniform steps,
/// started at the origin. Each coordinate increment is N(0, 1/steps).
inline planar_path sample_brownian(std::size_t steps, rng_seed seed) {
    if (steps < 1) throw error(errc::invalid_path, "steps must be positive");
    random_stream rng(seed);
    const double sd = std::sqrt(1.0 / static_cast<double>(steps));
    std::vector<point> pts(steps + 1);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double dx = sd * rng.gaussian();
        const double dy = sd * rng.gaussian();
        pts[i] = {pts[i - 1].x + dx, pts[i - 1].y + dy};
    }
    return planar_path::uniform(std::move(pts));
}

inline bool has_uniform_spacing(const planar_path &path) noexcept {
    const auto &t = path.times();
    const double dt = 1.0 / static_cast<double>(path.last());
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * dt) return false;
    }
    return true;
}

/// Insert a Brownian-bridge midpoint into every edge of a uniformly spaced
/// path. The midpoint of edge i is drawn from stream (seed, i) with mean the
/// edge midpoint and per-coordinate variance dt/4, times noise_scale^2
/// (noise_scale = 0 gives exact PL midpoints). Existing vertices are kept
/// bit-exactly.
inline planar_path bridge_refine(const planar_path &path, rng_seed seed, double noise_scale = 1.0) {
    if (!has_uniform_spacing(path)) throw error(errc::non_uniform_path, "bridge refinement needs uniform time spacing");
    const std::size_t edges = path.last();
    const double dt = 1.0 / static_cast<double>(edges);
    const double sd = noise_scale * std::sqrt(dt / 4.0);
    std::vector<point> pts(2 * edges + 1);
    for (std::size_t i = 0; i < edges; ++i) {
        const point a = path[i];
        const point b = path[i + 1];
        random_stream rng(seed, i);
        const double gx = rng.gaussian();
        const double gy = rng.gaussian();
        pts[2 * i] = a;
        pts[2 * i + 1] = {0.5 * (a.x + b.x) + sd * gx, 0.5 * (a.y + b.y) + sd * gy};
    }
    pts.back() = path.back();
    return planar_path::uniform(std::move(pts));
}

/// Sub-path on vertices i..j with times renormalized to [0, 1].
inline planar_path restrict(const planar_path &path, std::size_t i, std::size_t j) {
    if (i >= j || j > path.last()) throw error(errc::bad_range, "restrict needs 0 <= i < j <= last");
    const auto &t = path.times();
    const double t0 = t[i];
    const double span = t[j] - t[i];
    std::vector<double> times;
    std::vector<point> pts(path.points().begin() + static_cast<std::ptrdiff_t>(i),
                           path.points().begin() + static_cast<std::ptrdiff_t>(j) + 1);
    times.reserve(pts.size());
    for (std::size_t k = i; k <= j; ++k) times.push_back((t[k] - t0) / span);
    times.front() = 0.0;
    times.back() = 1.0;
    return planar_path(std::move(times), std::move(pts));
}

/// Vertex indices of the dissection times; every time must be a path time.
inline std::vector<std::size_t> vertex_indices(const planar_path &path, const dissection &d) {
    std::vector<std::size_t> idx;
    idx.reserve(d.size());
    const auto &t = path.times();
    for (double s : d.times()) {
        auto it = std::lower_bound(t.begin(), t.end(), s);
        if (it == t.end() || *it != s) throw error(errc::not_a_vertex, "dissection time is not a path vertex");
        idx.push_back(static_cast<std::size_t>(it - t.begin()));
    }
    return idx;
}

/// The piecewise-linear curve through the vertices selected by `d`.
inline planar_path pl_skeleton(const planar_path &path, const dissection &d) {
    std::vector<point> pts;
    pts.reserve(d.size());
    for (std::size_t i : vertex_indices(path, d)) pts.push_back(path[i]);
    return planar_path(d.times(), std::move(pts));
}

/// Exact p-variation of a polyline series over vertex dissections.
///
/// Only the endpoints and strict turning points can matter: for p >= 1 and
/// increments a, b of equal sign, |a|^p + |b|^p <= |a + b|^p, so dropping a
/// vertex interior to a monotone run never lowers the sum. The remaining
/// vertices go through an O(m^2) longest-path DP.
inline double p_variation(std::span<const double> series, double p) {
    if (!(p >= 1.0)) throw error(errc::bad_exponent, "p-variation needs p >= 1");
    if (series.size() < 2) throw error(errc::bad_range, "p-variation needs at least two values");

    std::vector<double> v;
    v.reserve(series.size());
    v.push_back(series.front());
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double l = series[i] - series[i - 1];
        const double r = series[i + 1] - series[i];
        if ((l > 0 && r < 0) || (l < 0 && r > 0)) v.push_back(series[i]);
    }
    v.push_back(series.back());

    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
        return s;
    }
    std::vector<double> best(v.size(), 0.0);
    for (std::size_t j = 1; j < v.size(); ++j) {
        double b = 0.0;
        for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(std::abs(v[j] - v[i]), p));
        best[j] = b;
    }
    return std::pow(best.back(), 1.0 / p);
}

/// Euclidean length of the chord-closed polyline.
inline double curve_length(const planar_path &path) {
    return pairwise_sum(0, path.closed_edge_count(), [&](std::size_t i) {
        const auto [a, b] = path.closed_edge(i);
        return std::hypot(b.x - a.x, b.y - a.y);
    });
}

inline std::vector<double> x_series(const planar_path &path) {
    std::vector<double> out;
    out.reserve(path.size());
    for (const auto &p : path.points()) out.push_back(p.x);
    return out;
}

inline std::vector<double> y_series(const planar_path &path) {
    std::vector<double> out;
    out.reserve(path.size());
    for (const auto &p : path.points()) out.push_back(p.y);
    return out;
}

inline planar_path time_reversed(const planar_path &path) {
    std::vector<point> pts(path.points().rbegin(), path.points().rend());
    std::vector<double> t(path.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.0 - path.times()[path.last() - i];
    t.front() = 0.0;
    t.back() = 1.0;
    return planar_path(std::move(t), std::move(pts));
}

inline planar_path transformed(const planar_path &path, double scale, point shift) {
    std::vector<point> pts;
    pts.reserve(path.size());
    for (const auto &p : path.points()) pts.push_back({scale * p.x + shift.x, scale * p.y + shift.y});
    return planar_path(path.times(), std::move(pts));
}

// Built-in curves used by the checks and the CLI.
namespace curves {

/// Regular `sides`-gon inscribed in the circle of given radius, traversed
/// `loops` times counterclockwise; the last vertex repeats the first.
inline planar_path polygon(std::size_t sides, std::size_t loops = 1, double radius = 1.0) {
    std::vector<point> pts(sides * loops + 1);
    for (std::size_t k = 0; k < sides; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sides);
        const point p{radius * std::cos(a), radius * std::sin(a)};
        for (std::size_t l = 0; l < loops; ++l) pts[l * sides + k] = p;
    }
    pts.back() = pts.front();
    return planar_path::uniform(std::move(pts));
}

inline planar_path unit_square() {
    return planar_path::uniform({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
}

/// (t, t^2) on [0, 1]; the chord closes it along y = x.
inline planar_path parabola(std::size_t vertices) {
    std::vector<point> pts(vertices);
    for (std::size_t i = 0; i < vertices; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(vertices - 1);
        pts[i] = {t, t * t};
    }
    pts.back() = {1.0, 1.0};
    return planar_path::uniform(std::move(pts));
}

/// Figure-eight x = sin(2 pi t), y = sin(4 pi t)/2 with lobes of winding +1
/// and -1. The second lobe is built as the exact mirror image of the first.
inline planar_path figure_eight(std::size_t half_vertices) {
    std::vector<point> pts(2 * half_vertices + 1);
    for (std::size_t k = 0; k <= half_vertices; ++k) {
        const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(half_vertices);
        pts[k] = {std::sin(a), 0.5 * std::sin(2.0 * a)};
    }
    pts[0] = {0.0, 0.0};
    pts[half_vertices] = {0.0, 0.0};
    for (std::size_t k = 1; k <= half_vertices; ++k) pts[half_vertices + k] = {-pts[k].x, pts[k].y};
    return planar_path::uniform(std::move(pts));
}

/// Straight segment from a to b.
inline planar_path segment(point a, point b) { return planar_path::uniform({a, b}); }

} // namespace curves

} // namespace windarea

#endif
