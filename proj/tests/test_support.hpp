#ifndef WINDAREA_TEST_SUPPORT_HPP
#define WINDAREA_TEST_SUPPORT_HPP

#include <windarea/path.hpp>
#include <windarea/rng.hpp>

#include <vector>

namespace windarea::testing {

/// Random polyline with vertices uniform in [0, 1]^2.
inline planar_path random_polyline(std::size_t vertices, rng_seed seed) {
    random_stream rng(seed);
    std::vector<point> pts(vertices);
    for (auto &p : pts) p = {rng.uniform(), rng.uniform()};
    return planar_path::uniform(std::move(pts));
}

inline point random_point(random_stream &rng, double lo, double hi) {
    return {lo + (hi - lo) * rng.uniform(), lo + (hi - lo) * rng.uniform()};
}

} // namespace windarea::testing

#endif
