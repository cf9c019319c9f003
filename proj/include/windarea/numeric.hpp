#ifndef WINDAREA_NUMERIC_HPP
#define WINDAREA_NUMERIC_HPP

#include <cstddef>
#include <span>

namespace windarea {

/// Pairwise (tree) sum of term(i) for i in [begin, end). The reduction tree
/// depends only on the range, so the result is reproducible.
template <typename Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term &term) {
    constexpr std::size_t leaf = 32;
    const std::size_t n = end - begin;
    if (n <= leaf) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(std::span<const double> values) {
    return pairwise_sum(0, values.size(), [&](std::size_t i) { return values[i]; });
}

} // namespace windarea

#endif
