#ifndef WINDAREA_CAUCHY_HPP
#define WINDAREA_CAUCHY_HPP

#include <windarea/error.hpp>
#include <windarea/numeric.hpp>
#include <windarea/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace windarea {

/// Cauchy law C(p, sigma); sigma = 0 is the point mass at p.
struct cauchy_params {
    double position = 0.0;
    double scale = 1.0;
};

inline double cauchy_cdf(const cauchy_params &c, double x) noexcept {
    if (c.scale == 0.0) return x < c.position ? 0.0 : 1.0;
    const double z = (x - c.position) / c.scale;
    // Tail-accurate forms of 1/2 + atan(z)/pi.
    if (z < 0.0) return std::atan2(1.0, -z) / std::numbers::pi;
    return 1.0 - std::atan2(1.0, z) / std::numbers::pi;
}

inline double cauchy_quantile(const cauchy_params &c, double u) noexcept {
    if (c.scale == 0.0) return c.position;
    if (u == 0.5) return c.position;
    if (u < 0.5) return c.position - c.scale / std::tan(std::numbers::pi * u);
    return c.position + c.scale / std::tan(std::numbers::pi * (1.0 - u));
}

inline double cauchy_density(const cauchy_params &c, double x) noexcept {
    const double z = x - c.position;
    return c.scale / (std::numbers::pi * (c.scale * c.scale + z * z));
}

/// n inverse-CDF draws from C(p, sigma).
inline std::vector<double> sample_cauchy(const cauchy_params &c, std::size_t n, rng_seed seed) {
    random_stream rng(seed);
    std::vector<double> out(n);
    for (auto &x : out) x = cauchy_quantile(c, rng.uniform_open());
    return out;
}

/// Quantile of sorted data at plotting positions (n + 1) q, interpolating
/// between neighbouring order statistics and clamped to the sample range.
/// Exact when the data are the distribution's quantiles at i / (n + 1).
inline double sorted_quantile(std::span<const double> sorted, double q) noexcept {
    const double n = static_cast<double>(sorted.size());
    const double h = std::clamp((n + 1.0) * q, 1.0, n);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    if (frac == 0.0 || lo >= sorted.size()) return sorted[lo - 1];
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

/// Median; the midpoint of the two central order statistics for even n.
inline double median(std::vector<double> samples) {
    if (samples.empty()) throw error(errc::too_few_samples, "median of an empty sample");
    std::sort(samples.begin(), samples.end());
    return sorted_quantile(samples, 0.5);
}

/// Position = sample median, scale = half the interquartile range.
inline cauchy_params quantile_fit(std::vector<double> samples) {
    if (samples.size() < 4) throw error(errc::too_few_samples, "a Cauchy fit needs at least 4 samples");
    std::sort(samples.begin(), samples.end());
    const double q1 = sorted_quantile(samples, 0.25);
    const double q3 = sorted_quantile(samples, 0.75);
    return {sorted_quantile(samples, 0.5), 0.5 * (q3 - q1)};
}

/// Default truncation ladder 2^4, 2^5, ..., 2^20.
inline std::vector<double> default_k_schedule() {
    std::vector<double> k;
    for (int e = 4; e <= 20; ++e) k.push_back(std::ldexp(1.0, e));
    return k;
}

/// Mean of clamp(x, -k, k) for every k in the schedule.
inline std::vector<double> truncated_mean_estimator(std::span<const double> samples, std::span<const double> k_schedule) {
    if (samples.empty()) throw error(errc::too_few_samples, "empty sample");
    std::vector<double> out;
    out.reserve(k_schedule.size());
    for (double k : k_schedule) {
        const double s = pairwise_sum(0, samples.size(), [&](std::size_t i) { return std::clamp(samples[i], -k, k); });
        out.push_back(s / static_cast<double>(samples.size()));
    }
    return out;
}

/// N * mean(sin(x / N)).
inline double sine_estimator(std::span<const double> samples, double n) {
    if (samples.empty()) throw error(errc::too_few_samples, "empty sample");
    const double s = pairwise_sum(0, samples.size(), [&](std::size_t i) { return std::sin(samples[i] / n); });
    return n * s / static_cast<double>(samples.size());
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, const Cdf &cdf) {
    if (samples.empty()) throw error(errc::too_few_samples, "empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        const double hi = static_cast<double>(i + 1) / n;
        const double lo = static_cast<double>(i) / n;
        d = std::max({d, std::abs(hi - f), std::abs(f - lo)});
    }
    return d;
}

inline double ks_statistic(std::vector<double> samples, const cauchy_params &c) {
    return ks_statistic(std::move(samples), [&](double x) { return cauchy_cdf(c, x); });
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw error(errc::too_few_samples, "empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic KS critical values: c(alpha) / sqrt(n) with c = 1.36 (5%) or 1.63 (1%).
inline double ks_critical_5(std::size_t n) { return 1.36 / std::sqrt(static_cast<double>(n)); }
inline double ks_critical_1(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }
inline double ks_two_sample_critical_1(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return 1.63 * std::sqrt((a + b) / (a * b));
}

} // namespace windarea

#endif
