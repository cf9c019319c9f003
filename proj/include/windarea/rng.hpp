#ifndef WINDAREA_RNG_HPP
#define WINDAREA_RNG_HPP

// Deterministic, splittable random streams. A stream is identified by a
// (seed, id) pair, so that any sub-computation (one path, one edge, one
// Monte Carlo trial) draws the same numbers no matter which thread runs it
// or in which order.

#include <cmath>
#include <cstdint>
#include <limits>

namespace windarea {

using rng_seed = std::uint64_t;

namespace detail {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derive the seed of child stream `id` of `seed`.
constexpr rng_seed derive_seed(rng_seed seed, std::uint64_t id) noexcept {
    return detail::mix64(seed ^ detail::mix64(id + 0x9e3779b97f4a7c15ULL));
}

/// Sequential generator (splitmix64). Satisfies UniformRandomBitGenerator.
class random_stream {
public:
    using result_type = std::uint64_t;

    explicit random_stream(rng_seed seed) noexcept : state_(detail::mix64(seed)) {}
    random_stream(rng_seed seed, std::uint64_t id) noexcept : random_stream(derive_seed(seed, id)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform index in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept {
        // Lemire's multiply-shift; the residual bias is < n / 2^64.
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

    /// Standard normal deviate, Marsaglia polar method.
    double gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace windarea

#endif
