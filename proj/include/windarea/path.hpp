#ifndef WINDAREA_PATH_HPP
#define WINDAREA_PATH_HPP

#include <windarea/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace windarea {

struct point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const point &, const point &) = default;
    friend point operator+(point a, point b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend point operator-(point a, point b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend point operator*(double c, point a) noexcept { return {c * a.x, c * a.y}; }
};

/// A sampled planar curve on the time interval [0, 1]. The curve is always
/// read as closed by the straight chord from its last vertex back to its
/// first one.
class planar_path {
public:
    /// Validating constructor: at least two vertices, times strictly
    /// increasing from exactly 0 to exactly 1, all coordinates finite.
    planar_path(std::vector<double> times, std::vector<point> points)
        : times_(std::move(times)), points_(std::move(points)) {
        if (points_.size() < 2) throw error(errc::invalid_path, "a path needs at least two vertices");
        if (times_.size() != points_.size())
            throw error(errc::invalid_path, "times and points differ in length");
        if (times_.front() != 0.0 || times_.back() != 1.0)
            throw error(errc::invalid_path, "times must start at 0 and end at 1");
        for (std::size_t i = 1; i < times_.size(); ++i) {
            if (!(times_[i] > times_[i - 1])) throw error(errc::invalid_path, "times must be strictly increasing");
        }
        for (const auto &p : points_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw error(errc::invalid_path, "non-finite coordinate");
        }
    }

    /// Vertices at uniform times i / (n - 1).
    static planar_path uniform(std::vector<point> points) {
        const std::size_t n = points.size();
        if (n < 2) throw error(errc::invalid_path, "a path needs at least two vertices");
        std::vector<double> times(n);
        for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        times.back() = 1.0;
        return planar_path(std::move(times), std::move(points));
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t last() const noexcept { return points_.size() - 1; }
    const std::vector<double> &times() const noexcept { return times_; }
    const std::vector<point> &points() const noexcept { return points_; }
    const point &operator[](std::size_t i) const noexcept { return points_[i]; }
    const point &front() const noexcept { return points_.front(); }
    const point &back() const noexcept { return points_.back(); }

    /// Number of edges of the chord-closed polygon (path edges + chord).
    std::size_t closed_edge_count() const noexcept { return points_.size(); }

    /// Edge i of the chord-closed polygon; edge last() is the chord.
    std::pair<point, point> closed_edge(std::size_t i) const noexcept {
        return {points_[i], points_[i + 1 == points_.size() ? 0 : i + 1]};
    }

    friend bool operator==(const planar_path &, const planar_path &) = default;

private:
    std::vector<double> times_;
    std::vector<point> points_;
};

struct bounding_box {
    double x_min, y_min, x_max, y_max;

    double width() const noexcept { return x_max - x_min; }
    double height() const noexcept { return y_max - y_min; }
    double diameter() const noexcept { return std::hypot(width(), height()); }
};

inline bounding_box bounds(const planar_path &path) noexcept {
    bounding_box b{path.front().x, path.front().y, path.front().x, path.front().y};
    for (const auto &p : path.points()) {
        b.x_min = std::min(b.x_min, p.x);
        b.x_max = std::max(b.x_max, p.x);
        b.y_min = std::min(b.y_min, p.y);
        b.y_max = std::max(b.y_max, p.y);
    }
    return b;
}

/// Vertex times 0 = t_0 < ... < t_n = 1 selecting a sub-polyline.
class dissection {
public:
    explicit dissection(std::vector<double> times) : times_(std::move(times)) {
        if (times_.size() < 2 || times_.front() != 0.0 || times_.back() != 1.0)
            throw error(errc::bad_range, "a dissection must contain both endpoints 0 and 1");
        for (std::size_t i = 1; i < times_.size(); ++i) {
            if (!(times_[i] > times_[i - 1])) throw error(errc::bad_range, "dissection times must increase");
        }
    }

    /// Every `stride`-th vertex of an n-vertex uniform path, plus the end.
    static dissection every(std::size_t vertices, std::size_t stride) {
        std::vector<double> t;
        for (std::size_t i = 0; i + 1 < vertices; i += stride)
            t.push_back(static_cast<double>(i) / static_cast<double>(vertices - 1));
        t.push_back(1.0);
        return dissection(std::move(t));
    }

    const std::vector<double> &times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }

private:
    std::vector<double> times_;
};

// Path CSV: header `t,x,y`, one vertex per row, 17 significant digits.

inline void write_path_csv(std::ostream &out, const planar_path &path) {
    out << "t,x,y\n";
    char buf[96];
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", path.times()[i], path[i].x, path[i].y);
        out << buf;
    }
}

inline void write_path_csv(const std::string &file, const planar_path &path) {
    std::ofstream out(file);
    if (!out) throw error(errc::io_error, "cannot open '" + file + "' for writing");
    write_path_csv(out, path);
    if (!out) throw error(errc::io_error, "write failed on '" + file + "'");
}

inline planar_path read_path_csv(std::istream &in, const std::string &context = "<stream>") {
    std::string line;
    if (!std::getline(in, line)) throw error(errc::io_error, context + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x,y") throw error(errc::io_error, context + ": expected header 't,x,y'");
    std::vector<double> times;
    std::vector<point> points;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        double v[3];
        const char *s = line.c_str();
        for (int k = 0; k < 3; ++k) {
            char *end = nullptr;
            v[k] = std::strtod(s, &end);
            if (end == s || (k < 2 && *end != ',') || (k == 2 && *end != '\0' && *end != '\r'))
                throw error(errc::io_error, context + ": malformed row " + std::to_string(row));
            s = end + 1;
        }
        times.push_back(v[0]);
        points.push_back({v[1], v[2]});
    }
    try {
        return planar_path(std::move(times), std::move(points));
    } catch (const error &e) {
        throw error(e.code(), context + ": " + e.what());
    }
}

inline planar_path read_path_csv(const std::string &file) {
    std::ifstream in(file);
    if (!in) throw error(errc::io_error, "cannot open '" + file + "'");
    return read_path_csv(in, file);
}

} // namespace windarea

#endif
