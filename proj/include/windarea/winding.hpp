#ifndef WINDAREA_WINDING_HPP
#define WINDAREA_WINDING_HPP

// Integer winding numbers of chord-closed polylines.
//
// Sign convention: counterclockwise loops wind positively. Both the point
// queries and the grid field use the nonzero rule with a rightward
// horizontal ray: an edge (a, b) crosses the ray from z when
// (a.y > z.y) != (b.y > z.y) and the crossing lies strictly right of z;
// upward crossings count +1, downward -1. The half-open test counts a
// vertex lying on the ray exactly once.

#include <windarea/error.hpp>
#include <windarea/parallel.hpp>
#include <windarea/path.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace windarea {

/// Euclidean distance from z to the segment [a, b].
inline double segment_distance(point z, point a, point b) noexcept {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((z.x - a.x) * dx + (z.y - a.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(z.x - (a.x + t * dx), z.y - (a.y + t * dy));
}

/// Default on-curve tolerance for point queries: 1e-12 x bounding-box diameter.
inline double default_point_epsilon(const planar_path &path) noexcept { return 1e-12 * bounds(path).diameter(); }

namespace detail {

// Signed crossing of the rightward ray from z by edge (a, b), decided by
// the orientation of z against the edge rather than an explicit intercept.
inline int ray_crossing(point z, point a, point b) noexcept {
    const bool a_above = a.y > z.y;
    const bool b_above = b.y > z.y;
    if (a_above == b_above) return 0;
    const double side = (b.x - a.x) * (z.y - a.y) - (z.x - a.x) * (b.y - a.y);
    if (b_above) return side > 0.0 ? 1 : 0;  // upward edge: z strictly left
    return side < 0.0 ? -1 : 0;              // downward edge: z strictly left
}

} // namespace detail

/// Winding of the chord-closed path around z. Throws PointOnCurve when z is
/// within `eps` of an edge (negative eps selects the default).
inline int winding_number(const planar_path &path, point z, double eps = -1.0) {
    if (eps < 0.0) eps = default_point_epsilon(path);
    int w = 0;
    for (std::size_t i = 0; i < path.closed_edge_count(); ++i) {
        const auto [a, b] = path.closed_edge(i);
        if (segment_distance(z, a, b) <= eps) throw error(errc::point_on_curve, "query point lies on the curve");
        w += detail::ray_crossing(z, a, b);
    }
    return w;
}

/// Independent oracle: accumulate the signed angle subtended by every edge
/// (chord included), divide by 2 pi and round.
inline int angle_winding_oracle(const planar_path &path, point z, double eps = -1.0) {
    if (eps < 0.0) eps = default_point_epsilon(path);
    double total = 0.0;
    for (std::size_t i = 0; i < path.closed_edge_count(); ++i) {
        const auto [a, b] = path.closed_edge(i);
        if (segment_distance(z, a, b) <= eps) throw error(errc::point_on_curve, "query point lies on the curve");
        const point u = a - z;
        const point v = b - z;
        total += std::atan2(u.x * v.y - u.y * v.x, u.x * v.x + u.y * v.y);
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Point-query engine: edges bucketed by horizontal bands so that a query
/// only visits edges whose y-range can reach it. Gives the same answers as
/// winding_number.
class winding_index {
public:
    explicit winding_index(const planar_path &path, double eps = -1.0)
        : eps_(eps < 0.0 ? default_point_epsilon(path) : eps), box_(bounds(path)) {
        const std::size_t edges = path.closed_edge_count();
        a_.reserve(edges);
        b_.reserve(edges);
        for (std::size_t i = 0; i < edges; ++i) {
            const auto [a, b] = path.closed_edge(i);
            a_.push_back(a);
            b_.push_back(b);
        }
        y0_ = box_.y_min - eps_;
        const double h = box_.height() + 2.0 * eps_;
        bands_ = std::clamp<std::size_t>(edges / 8, 1, 1u << 16);
        band_height_ = h > 0.0 ? h / static_cast<double>(bands_) : 1.0;

        std::vector<std::uint32_t> count(bands_ + 1, 0);
        auto band_range = [&](std::size_t i) {
            const double lo = std::min(a_[i].y, b_[i].y) - eps_;
            const double hi = std::max(a_[i].y, b_[i].y) + eps_;
            return std::pair{band_of(lo), band_of(hi)};
        };
        for (std::size_t i = 0; i < edges; ++i) {
            const auto [lo, hi] = band_range(i);
            for (std::size_t k = lo; k <= hi; ++k) ++count[k + 1];
        }
        for (std::size_t k = 0; k < bands_; ++k) count[k + 1] += count[k];
        start_.assign(count.begin(), count.end());
        entries_.resize(start_.back());
        for (std::size_t i = 0; i < edges; ++i) {
            const auto [lo, hi] = band_range(i);
            for (std::size_t k = lo; k <= hi; ++k) entries_[count[k]++] = static_cast<std::uint32_t>(i);
        }
    }

    double epsilon() const noexcept { return eps_; }

    /// Winding at z, or nullopt when z is within epsilon of the curve.
    std::optional<int> try_winding(point z) const noexcept {
        if (z.y < y0_ || z.y > box_.y_max + eps_ || z.x > box_.x_max + eps_) return 0;
        const std::size_t k = band_of(z.y);
        int w = 0;
        for (std::uint32_t e = start_[k]; e < start_[k + 1]; ++e) {
            const std::uint32_t i = entries_[e];
            const point a = a_[i];
            const point b = b_[i];
            if (z.y >= std::min(a.y, b.y) - eps_ && z.y <= std::max(a.y, b.y) + eps_ &&
                z.x >= std::min(a.x, b.x) - eps_ && z.x <= std::max(a.x, b.x) + eps_ &&
                segment_distance(z, a, b) <= eps_)
                return std::nullopt;
            w += detail::ray_crossing(z, a, b);
        }
        return w;
    }

    int winding(point z) const {
        if (auto w = try_winding(z)) return *w;
        throw error(errc::point_on_curve, "query point lies on the curve");
    }

private:
    std::size_t band_of(double y) const noexcept {
        const double u = (y - y0_) / band_height_;
        if (!(u > 0.0)) return 0;
        return std::min(static_cast<std::size_t>(u), bands_ - 1);
    }

    double eps_;
    bounding_box box_;
    double y0_ = 0.0;
    double band_height_ = 1.0;
    std::size_t bands_ = 1;
    std::vector<point> a_, b_;
    std::vector<std::uint32_t> start_, entries_;
};

/// Rectangular grid of square cells; values live at cell centers.
struct grid_spec {
    double x_min = 0.0;
    double y_min = 0.0;
    double cell = 1.0;
    std::size_t nx = 1;
    std::size_t ny = 1;

    double cell_area() const noexcept { return cell * cell; }
    double area() const noexcept { return cell_area() * static_cast<double>(nx) * static_cast<double>(ny); }
    double center_x(std::size_t ix) const noexcept { return x_min + (static_cast<double>(ix) + 0.5) * cell; }
    double center_y(std::size_t iy) const noexcept { return y_min + (static_cast<double>(iy) + 0.5) * cell; }
    point center(std::size_t ix, std::size_t iy) const noexcept { return {center_x(ix), center_y(iy)}; }

    void validate() const {
        if (!(cell > 0.0) || !std::isfinite(cell) || nx < 1 || ny < 1 || !std::isfinite(x_min) || !std::isfinite(y_min))
            throw error(errc::bad_range, "grid needs a positive cell size and at least one cell");
    }

    /// resolution x resolution grid over the path's bounding box padded by
    /// `pad` of its larger side on every side, centered on the box.
    static grid_spec covering(const planar_path &path, std::size_t resolution, double pad = 0.05) {
        const bounding_box b = bounds(path);
        double side = std::max(b.width(), b.height());
        if (!(side > 0.0)) side = 1.0;
        side *= 1.0 + 2.0 * pad;
        const double cell = side / static_cast<double>(resolution);
        const double cx = 0.5 * (b.x_min + b.x_max);
        const double cy = 0.5 * (b.y_min + b.y_max);
        return {cx - 0.5 * side, cy - 0.5 * side, cell, resolution, resolution};
    }

    /// Square grid over [lo, hi]^2.
    static grid_spec square(double lo, double hi, std::size_t resolution) {
        return {lo, lo, (hi - lo) / static_cast<double>(resolution), resolution, resolution};
    }
};

/// Winding values at every cell center. Cells whose center is within
/// `mask_radius` of the curve are masked and excluded from measures.
struct winding_field {
    grid_spec grid;
    double mask_radius = 0.0;
    std::vector<std::int32_t> values;  // row-major, iy * nx + ix
    std::vector<std::uint8_t> mask;
    std::size_t masked_count = 0;

    std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return iy * grid.nx + ix; }
    std::int32_t value(std::size_t ix, std::size_t iy) const noexcept { return values[index(ix, iy)]; }
    bool masked(std::size_t ix, std::size_t iy) const noexcept { return mask[index(ix, iy)] != 0; }
    double masked_area() const noexcept { return static_cast<double>(masked_count) * grid.cell_area(); }
    double masked_fraction() const noexcept {
        return static_cast<double>(masked_count) / static_cast<double>(values.size());
    }

    /// Largest |theta| over unmasked cells.
    std::int32_t max_abs() const noexcept {
        std::int32_t m = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!mask[i]) m = std::max(m, values[i] < 0 ? -values[i] : values[i]);
        return m;
    }
};

namespace detail {

inline bool within_ulps(double a, double b, int ulps) noexcept {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * std::max(scale, std::numeric_limits<double>::min());
}

} // namespace detail

/// Scanline evaluation of the winding field.
///
/// Edges are bucketed by the grid rows their y-range (padded by the mask
/// radius) can touch. For each row, every crossing edge drops its sign into
/// the bucket of the last cell center strictly left of its x-intercept; a
/// suffix sum along the row then yields all winding values. Rows are
/// independent and may run on `workers` threads with identical output.
inline winding_field compute_winding_field(const planar_path &path, const grid_spec &grid, double mask_radius,
                                           unsigned workers = 1) {
    grid.validate();
    const std::size_t nx = grid.nx;
    const std::size_t ny = grid.ny;
    const std::size_t edges = path.closed_edge_count();
    const double r = mask_radius;

    winding_field field;
    field.grid = grid;
    field.mask_radius = r;
    field.values.assign(nx * ny, 0);
    field.mask.assign(nx * ny, 0);

    auto row_lo = [&](double y) -> std::ptrdiff_t {
        return static_cast<std::ptrdiff_t>(std::floor((y - grid.y_min) / grid.cell - 0.5)) - 1;
    };
    auto row_hi = [&](double y) -> std::ptrdiff_t {
        return static_cast<std::ptrdiff_t>(std::ceil((y - grid.y_min) / grid.cell - 0.5)) + 1;
    };
    auto clip_rows = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
        lo = std::max<std::ptrdiff_t>(lo, 0);
        hi = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(ny) - 1);
        return std::pair{lo, hi};
    };
    auto edge_rows = [&](std::size_t i) {
        const auto [a, b] = path.closed_edge(i);
        return clip_rows(row_lo(std::min(a.y, b.y) - r), row_hi(std::max(a.y, b.y) + r));
    };

    // CSR: row -> candidate edges.
    std::vector<std::size_t> start(ny + 1, 0);
    for (std::size_t i = 0; i < edges; ++i) {
        const auto [lo, hi] = edge_rows(i);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) ++start[static_cast<std::size_t>(j) + 1];
    }
    for (std::size_t j = 0; j < ny; ++j) start[j + 1] += start[j];
    std::vector<std::uint32_t> entries(start.back());
    {
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < edges; ++i) {
            const auto [lo, hi] = edge_rows(i);
            for (std::ptrdiff_t j = lo; j <= hi; ++j) entries[fill[static_cast<std::size_t>(j)]++] = static_cast<std::uint32_t>(i);
        }
    }

    std::vector<std::size_t> row_masked(ny, 0);
    parallel_for(ny, workers, [&](std::size_t j) {
        const double yc = grid.center_y(j);
        std::int32_t *vals = field.values.data() + j * nx;
        std::uint8_t *msk = field.mask.data() + j * nx;
        std::vector<std::int32_t> bucket(nx, 0);

        auto mask_range = [&](double lo, double hi) {
            const double ulo = std::ceil((lo - grid.x_min) / grid.cell - 0.5);
            const double uhi = std::floor((hi - grid.x_min) / grid.cell - 0.5);
            if (uhi < 0.0 || ulo > static_cast<double>(nx - 1)) return std::pair<std::size_t, std::size_t>{1, 0};
            return std::pair{static_cast<std::size_t>(std::max(ulo, 0.0)),
                             static_cast<std::size_t>(std::min(uhi, static_cast<double>(nx - 1)))};
        };

        for (std::size_t e = start[j]; e < start[j + 1]; ++e) {
            const auto [a, b] = path.closed_edge(entries[e]);

            if ((a.y > yc) != (b.y > yc)) {
                const double xi = a.x + (yc - a.y) * ((b.x - a.x) / (b.y - a.y));
                const double u = (xi - grid.x_min) / grid.cell - 0.5;
                const std::int32_t sign = b.y > a.y ? 1 : -1;
                if (u > 0.0) {
                    const double k = std::ceil(u) - 1.0;
                    const std::size_t slot = k >= static_cast<double>(nx - 1) ? nx - 1 : static_cast<std::size_t>(k);
                    bucket[slot] += sign;
                }
                const double near = std::round(u);
                if (near >= 0.0 && near <= static_cast<double>(nx - 1)) {
                    const auto k = static_cast<std::size_t>(near);
                    if (detail::within_ulps(grid.center_x(k), xi, 4)) msk[k] = 1;
                }
            }

            if (r > 0.0) {
                // Cells whose center is within r of the edge: clip the edge to
                // the slab |y - yc| <= r, then test candidates exactly.
                double t0 = 0.0, t1 = 1.0;
                const double dy = b.y - a.y;
                if (dy == 0.0) {
                    if (std::abs(a.y - yc) > r) continue;
                } else {
                    double ta = (yc - r - a.y) / dy;
                    double tb = (yc + r - a.y) / dy;
                    if (ta > tb) std::swap(ta, tb);
                    t0 = std::max(t0, ta);
                    t1 = std::min(t1, tb);
                    if (t0 > t1) continue;
                }
                const double xa = a.x + t0 * (b.x - a.x);
                const double xb = a.x + t1 * (b.x - a.x);
                const auto [lo, hi] = mask_range(std::min(xa, xb) - r, std::max(xa, xb) + r);
                for (std::size_t k = lo; k <= hi && lo <= hi; ++k) {
                    if (!msk[k] && segment_distance({grid.center_x(k), yc}, a, b) <= r) msk[k] = 1;
                }
            }
        }

        std::int32_t acc = 0;
        std::size_t masked = 0;
        for (std::size_t k = nx; k-- > 0;) {
            acc += bucket[k];
            vals[k] = acc;
            masked += msk[k];
        }
        row_masked[j] = masked;
    });
    for (std::size_t m : row_masked) field.masked_count += m;
    return field;
}

/// Winding field with the default mask radius of half a cell.
inline winding_field compute_winding_field(const planar_path &path, const grid_spec &grid, unsigned workers = 1) {
    return compute_winding_field(path, grid, 0.5 * grid.cell, workers);
}

// Field export: CSV `ix,iy,theta` over unmasked cells plus a JSON sidecar.

inline void write_field_csv(std::ostream &out, const winding_field &field) {
    out << "ix,iy,theta\n";
    for (std::size_t iy = 0; iy < field.grid.ny; ++iy)
        for (std::size_t ix = 0; ix < field.grid.nx; ++ix)
            if (!field.masked(ix, iy)) out << ix << ',' << iy << ',' << field.value(ix, iy) << '\n';
}

inline void write_field_csv(const std::string &file, const winding_field &field) {
    std::ofstream out(file);
    if (!out) throw error(errc::io_error, "cannot open '" + file + "' for writing");
    write_field_csv(out, field);
}

} // namespace windarea

#endif
