#ifndef WINDAREA_ERROR_HPP
#define WINDAREA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace windarea {

enum class errc {
    invalid_path,
    non_uniform_path,
    bad_range,
    not_a_vertex,
    bad_exponent,
    point_on_curve,
    bad_window,
    too_few_samples,
    bad_rate,
    io_error,
    usage,
};

inline const char *errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_path: return "InvalidPath";
        case errc::non_uniform_path: return "NonUniformPath";
        case errc::bad_range: return "BadRange";
        case errc::not_a_vertex: return "NotAVertex";
        case errc::bad_exponent: return "BadExponent";
        case errc::point_on_curve: return "PointOnCurve";
        case errc::bad_window: return "BadWindow";
        case errc::too_few_samples: return "TooFewSamples";
        case errc::bad_rate: return "BadRate";
        case errc::io_error: return "IoError";
        case errc::usage: return "Usage";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace windarea

#endif
