#ifndef WINDAREA_AREA_MEASURE_HPP
#define WINDAREA_AREA_MEASURE_HPP

#include <windarea/error.hpp>
#include <windarea/winding.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace windarea {

/// Area-weighted histogram of a winding field over the nonzero integers.
/// Areas are stored as exact cell counts times the cell area.
struct winding_measure {
    std::map<int, std::uint64_t> counts;  // n != 0 -> unmasked cells with theta = n
    double cell_area = 0.0;
    double masked_area = 0.0;
    double grid_area = 0.0;

    double area(int n) const noexcept {
        auto it = counts.find(n);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) * cell_area;
    }

    double total_mass() const noexcept {
        std::uint64_t c = 0;
        for (const auto &[n, k] : counts) c += k;
        return static_cast<double>(c) * cell_area;
    }

    int max_positive() const noexcept { return counts.empty() || counts.rbegin()->first < 0 ? 0 : counts.rbegin()->first; }
    int max_negative() const noexcept { return counts.empty() || counts.begin()->first > 0 ? 0 : -counts.begin()->first; }
    int max_abs() const noexcept { return std::max(max_positive(), max_negative()); }
    bool empty() const noexcept { return counts.empty(); }
};

inline winding_measure measure_from_field(const winding_field &field) {
    winding_measure m;
    m.cell_area = field.grid.cell_area();
    m.masked_area = field.masked_area();
    m.grid_area = field.grid.area();
    // Dense tally over the bounded value range, then keep nonzero bins.
    std::int32_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        if (field.mask[i]) continue;
        lo = std::min(lo, field.values[i]);
        hi = std::max(hi, field.values[i]);
    }
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(hi - lo) + 1, 0);
    for (std::size_t i = 0; i < field.values.size(); ++i)
        if (!field.mask[i]) ++tally[static_cast<std::size_t>(field.values[i] - lo)];
    for (std::int32_t n = lo; n <= hi; ++n) {
        const std::uint64_t c = tally[static_cast<std::size_t>(n - lo)];
        if (n != 0 && c > 0) m.counts[n] = c;
    }
    return m;
}

/// D_N = area{theta >= N} and D^-_N = area{theta <= -N} for N = 1..n_max.
struct tail_table {
    std::vector<double> d_plus;   // index N - 1
    std::vector<double> d_minus;  // index N - 1

    std::size_t n_max() const noexcept { return d_plus.size(); }
    double plus(std::size_t n) const noexcept { return d_plus[n - 1]; }
    double minus(std::size_t n) const noexcept { return d_minus[n - 1]; }
};

inline tail_table tails(const winding_measure &m, std::size_t n_max) {
    tail_table t;
    t.d_plus.assign(n_max, 0.0);
    t.d_minus.assign(n_max, 0.0);
    std::vector<std::uint64_t> cp(n_max + 1, 0), cm(n_max + 1, 0);
    // Cumulative counts from the top down, clamping windings beyond n_max
    // into the last bin.
    for (const auto &[n, c] : m.counts) {
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n < 0 ? -n : n), n_max);
        if (k == 0) continue;
        (n > 0 ? cp : cm)[k] += c;
    }
    std::uint64_t sp = 0, sm = 0;
    for (std::size_t k = n_max; k >= 1; --k) {
        sp += cp[k];
        sm += cm[k];
        t.d_plus[k - 1] = static_cast<double>(sp) * m.cell_area;
        t.d_minus[k - 1] = static_cast<double>(sm) * m.cell_area;
    }
    return t;
}

/// Tail table covering the full (bounded) winding range of the measure.
inline tail_table tails(const winding_measure &m) {
    return tails(m, static_cast<std::size_t>(std::max(1, m.max_abs())));
}

/// p = sum_N (D_N - D^-_N).
inline double position_parameter(const tail_table &t) {
    double p = 0.0;
    for (std::size_t n = 1; n <= t.n_max(); ++n) p += t.plus(n) - t.minus(n);
    return p;
}

/// Tail-constant estimate: mean over N in [n_lo, n_hi] of pi N (D_N + D^-_N) / 2.
inline double scale_parameter(const tail_table &t, std::size_t n_lo, std::size_t n_hi) {
    if (n_lo < 1 || n_lo > n_hi || n_hi > t.n_max())
        throw error(errc::bad_window, "scale window must satisfy 1 <= n_lo <= n_hi <= n_max");
    double s = 0.0;
    for (std::size_t n = n_lo; n <= n_hi; ++n)
        s += std::numbers::pi * static_cast<double>(n) * (t.plus(n) + t.minus(n)) / 2.0;
    return s / static_cast<double>(n_hi - n_lo + 1);
}

/// sum_n n mu(n) = integral of theta over the unmasked cells.
inline double moment_sum(const winding_measure &m) {
    std::int64_t s = 0;
    for (const auto &[n, c] : m.counts) s += static_cast<std::int64_t>(n) * static_cast<std::int64_t>(c);
    return static_cast<double>(s) * m.cell_area;
}

/// sum_n n^2 mu(n), the squared L2 norm of theta.
inline double second_moment(const winding_measure &m) {
    double s = 0.0;
    for (const auto &[n, c] : m.counts) s += static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(c);
    return s * m.cell_area;
}

// Exports: CSV `n,area` and `N,D_plus,D_minus`.

inline void write_measure_csv(std::ostream &out, const winding_measure &m) {
    out << "n,area\n";
    char buf[64];
    for (const auto &[n, c] : m.counts) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", n, static_cast<double>(c) * m.cell_area);
        out << buf;
    }
}

inline void write_tails_csv(std::ostream &out, const tail_table &t) {
    out << "N,D_plus,D_minus\n";
    char buf[96];
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, t.plus(n), t.minus(n));
        out << buf;
    }
}

} // namespace windarea

#endif
