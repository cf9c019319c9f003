#ifndef WINDAREA_POISSON_MC_HPP
#define WINDAREA_POISSON_MC_HPP

// Poisson point clouds and the normalized winding sum (1/K) sum theta(z)
// over a cloud of intensity K.

#include <windarea/error.hpp>
#include <windarea/parallel.hpp>
#include <windarea/path.hpp>
#include <windarea/rng.hpp>
#include <windarea/winding.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace windarea {

struct rectangle {
    double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;

    double area() const noexcept { return std::max(0.0, x_max - x_min) * std::max(0.0, y_max - y_min); }
    bool contains(point p) const noexcept { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
};

/// Bounding box of the path padded on every side by `pad` of its larger side.
inline rectangle hull_window(const planar_path &path, double pad = 0.05) {
    const bounding_box b = bounds(path);
    const double m = pad * std::max(b.width(), b.height());
    return {b.x_min - m, b.y_min - m, b.x_max + m, b.y_max + m};
}

struct point_cloud {
    std::vector<point> points;
    double intensity = 1.0;
    rectangle window;
};

namespace detail {

// Poisson(K area) count followed by uniform points, all from one stream.
template <typename Sink>
void generate_poisson(double intensity, const rectangle &window, rng_seed seed, Sink &&sink) {
    const double mean = intensity * window.area();
    if (!(mean > 0.0)) return;
    random_stream rng(seed);
    std::poisson_distribution<long long> count_dist(mean);
    const long long count = count_dist(rng);
    const double w = window.x_max - window.x_min;
    const double h = window.y_max - window.y_min;
    for (long long i = 0; i < count; ++i) {
        const double x = window.x_min + w * rng.uniform();
        const double y = window.y_min + h * rng.uniform();
        sink(point{x, y});
    }
}

inline void check_intensity(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw error(errc::bad_rate, "intensity must be positive and finite");
}

} // namespace detail

/// Homogeneous Poisson process of intensity K restricted to `window`.
inline point_cloud sample_poisson(double intensity, const rectangle &window, rng_seed seed) {
    detail::check_intensity(intensity);
    point_cloud c;
    c.intensity = intensity;
    c.window = window;
    detail::generate_poisson(intensity, window, seed, [&](point p) { c.points.push_back(p); });
    return c;
}

/// Independent p-thinning; the result has intensity p K.
inline point_cloud thin(const point_cloud &cloud, double keep, rng_seed seed) {
    random_stream rng(seed);
    point_cloud out;
    out.intensity = cloud.intensity * keep;
    out.window = cloud.window;
    for (const auto &p : cloud.points)
        if (rng.uniform() < keep) out.points.push_back(p);
    return out;
}

struct winding_sum_result {
    double value = 0.0;       // (1/K) sum of theta over non-skipped points
    std::size_t points = 0;
    std::size_t skipped = 0;  // points within epsilon of the curve
};

inline winding_sum_result winding_sum(const winding_index &index, const point_cloud &cloud) {
    winding_sum_result r;
    std::int64_t total = 0;
    for (const auto &z : cloud.points) {
        ++r.points;
        if (auto w = index.try_winding(z)) total += *w;
        else ++r.skipped;
    }
    r.value = static_cast<double>(total) / cloud.intensity;
    return r;
}

inline winding_sum_result winding_sum(const planar_path &path, const point_cloud &cloud) {
    return winding_sum(winding_index(path), cloud);
}

struct trial_ensemble {
    std::vector<double> values;
    std::size_t skipped = 0;
    std::size_t points = 0;
    rectangle window;
};

/// Independent winding sums for one frozen path; only the point process is
/// resampled. Trial t uses seed derive_seed(seed, t), so trial t equals
/// winding_sum(path, sample_poisson(K, window, derive_seed(seed, t))) and the
/// ensemble does not depend on the worker count.
inline trial_ensemble cauchy_trial_ensemble(const planar_path &path, double intensity, std::size_t trials,
                                            rng_seed seed, unsigned workers = 1) {
    detail::check_intensity(intensity);
    if (trials < 1) throw error(errc::too_few_samples, "need at least one trial");
    const winding_index index(path);
    trial_ensemble e;
    e.window = hull_window(path);
    e.values.resize(trials);
    std::vector<std::size_t> skipped(trials, 0), points(trials, 0);
    parallel_for(trials, workers, [&](std::size_t t) {
        std::int64_t total = 0;
        detail::generate_poisson(intensity, e.window, derive_seed(seed, t), [&](point z) {
            ++points[t];
            if (auto w = index.try_winding(z)) total += *w;
            else ++skipped[t];
        });
        e.values[t] = static_cast<double>(total) / intensity;
    });
    for (std::size_t t = 0; t < trials; ++t) {
        e.skipped += skipped[t];
        e.points += points[t];
    }
    return e;
}

/// Poisson-count versus fixed-count random sums of draws from the empirical
/// law of `dist_samples`, both divided by lambda: set one sums Poisson(lambda)
/// draws, set two sums ceil(lambda) draws. `count` sums per set.
inline std::pair<std::vector<double>, std::vector<double>>
poissonization_check(std::span<const double> dist_samples, double lambda, rng_seed seed, std::size_t count = 1000,
                     unsigned workers = 1) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw error(errc::bad_rate, "lambda must be at least 1");
    if (dist_samples.empty()) throw error(errc::too_few_samples, "empty source distribution");
    const auto fixed = static_cast<long long>(std::ceil(lambda));
    const std::uint64_t n = dist_samples.size();
    std::vector<double> poisson_sums(count), fixed_sums(count);
    auto draw_sum = [&](random_stream &rng, long long k) {
        double s = 0.0;
        for (long long i = 0; i < k; ++i) s += dist_samples[rng.below(n)];
        return s / lambda;
    };
    parallel_for(count, workers, [&](std::size_t i) {
        random_stream a(derive_seed(seed, 2 * i));
        std::poisson_distribution<long long> pd(lambda);
        const long long k = pd(a);
        poisson_sums[i] = draw_sum(a, k);
        random_stream b(derive_seed(seed, 2 * i + 1));
        fixed_sums[i] = draw_sum(b, fixed);
    });
    return {std::move(poisson_sums), std::move(fixed_sums)};
}

} // namespace windarea

#endif
