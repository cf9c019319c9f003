#ifndef WINDAREA_EXPERIMENTS_HPP
#define WINDAREA_EXPERIMENTS_HPP

// Experiment pipelines behind the CLI subcommands. Each one is a pure
// function of its parameter struct (apart from the wall-clock field and the
// files it is asked to write) and returns a JSON report that embeds every
// parameter needed to re-run it.

#include <windarea/area_measure.hpp>
#include <windarea/cauchy.hpp>
#include <windarea/curves.hpp>
#include <windarea/error.hpp>
#include <windarea/integrals.hpp>
#include <windarea/parallel.hpp>
#include <windarea/path.hpp>
#include <windarea/poisson_mc.hpp>
#include <windarea/winding.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace windarea {

using json = nlohmann::ordered_json;

inline constexpr int report_schema = 1;
inline constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);

struct experiment_report {
    json body;
    bool assertions_passed = true;
    std::vector<std::string> failures;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            assertions_passed = false;
            failures.push_back(what);
        }
    }
};

namespace detail {

class stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json header(const char *command, json params) {
    json j;
    j["schema"] = report_schema;
    j["command"] = command;
    j["params"] = std::move(params);
    return j;
}

inline void finish(experiment_report &r, const stopwatch &clock, bool timing) {
    r.body["assertions"] = {{"passed", r.assertions_passed}, {"failures", r.failures}};
    if (timing) r.body["timing"] = {{"wall_seconds", clock.seconds()}};
}

inline json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

struct moments {
    double mean = 0.0;
    std::optional<double> std_error;  // needs at least two samples
};

inline moments mean_and_error(const std::vector<double> &v) {
    moments m;
    const double n = static_cast<double>(v.size());
    m.mean = pairwise_sum(v) / n;
    if (v.size() >= 2) {
        const double ss = pairwise_sum(0, v.size(), [&](std::size_t i) { return (v[i] - m.mean) * (v[i] - m.mean); });
        m.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return m;
}

struct regression {
    std::optional<double> correlation;
    std::optional<double> slope;  // of y on x
};

inline regression regress(const std::vector<double> &x, const std::vector<double> &y) {
    regression r;
    if (x.size() < 2) return r;
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n, my = pairwise_sum(y) / n;
    const double sxy = pairwise_sum(0, x.size(), [&](std::size_t i) { return (x[i] - mx) * (y[i] - my); });
    const double sxx = pairwise_sum(0, x.size(), [&](std::size_t i) { return (x[i] - mx) * (x[i] - mx); });
    const double syy = pairwise_sum(0, y.size(), [&](std::size_t i) { return (y[i] - my) * (y[i] - my); });
    if (sxx > 0.0) r.slope = sxy / sxx;
    if (sxx > 0.0 && syy > 0.0) r.correlation = sxy / std::sqrt(sxx * syy);
    return r;
}

inline std::ofstream open_out(const std::string &file) {
    std::ofstream out(file);
    if (!out) throw error(errc::io_error, "cannot open '" + file + "' for writing");
    return out;
}

} // namespace detail

/// Brownian paths of an ensemble: member k uses seed derive_seed(seed, k).
inline planar_path ensemble_path(std::size_t steps, rng_seed seed, std::size_t k) {
    return sample_brownian(steps, derive_seed(seed, k));
}

/// Dyadic lineage: sample at base_steps, then bridge-refine `levels` times.
/// Level l is refined with seed derive_seed(seed, l).
inline std::vector<planar_path> brownian_lineage(std::size_t base_steps, unsigned levels, rng_seed seed) {
    std::vector<planar_path> out;
    out.push_back(sample_brownian(base_steps, seed));
    for (unsigned l = 1; l <= levels; ++l) out.push_back(bridge_refine(out.back(), derive_seed(seed, l)));
    return out;
}

// ---------------------------------------------------------------- simulate

struct simulate_params {
    std::size_t steps = 1024;
    rng_seed seed = 1;
    std::string out_path;
    bool timing = true;
};

inline experiment_report cmd_simulate(const simulate_params &p) {
    detail::stopwatch clock;
    if (p.steps < 1) throw error(errc::usage, "--steps must be at least 1");
    if (p.out_path.empty()) throw error(errc::usage, "--out is required");
    const planar_path path = sample_brownian(p.steps, p.seed);
    write_path_csv(p.out_path, path);
    experiment_report r;
    r.body = detail::header("simulate", {{"steps", p.steps}, {"seed", p.seed}, {"out", p.out_path}});
    r.body["results"] = {{"vertices", path.size()},
                         {"levy_area", levy_area(path)},
                         {"length", curve_length(path)},
                         {"end", {path.back().x, path.back().y}}};
    detail::finish(r, clock, p.timing);
    return r;
}

// ----------------------------------------------------------------- dn_scan

struct dn_scan_params {
    std::size_t steps = 1u << 16;
    std::size_t paths = 200;
    std::size_t grid = 2048;
    std::size_t n_max = 8;
    rng_seed seed = 1;
    unsigned workers = 1;
    std::string table_csv;  // optional `N,mean_ND,std_error,masked_bound`
    bool timing = true;
};

/// Ensemble means of N D_N over Brownian paths.
inline experiment_report cmd_dn_scan(const dn_scan_params &p) {
    detail::stopwatch clock;
    if (p.steps < 1 || p.paths < 1 || p.grid < 1 || p.n_max < 1)
        throw error(errc::usage, "steps, paths, grid and n-max must be positive");

    std::vector<std::vector<double>> plus(p.n_max, std::vector<double>(p.paths));
    std::vector<std::vector<double>> minus(p.n_max, std::vector<double>(p.paths));
    std::vector<double> masked(p.paths), cap(p.paths);
    parallel_for(p.paths, p.workers, [&](std::size_t k) {
        const planar_path path = ensemble_path(p.steps, p.seed, k);
        const winding_field field = compute_winding_field(path, grid_spec::covering(path, p.grid));
        const winding_measure m = measure_from_field(field);
        const tail_table t = tails(m, p.n_max);
        for (std::size_t n = 1; n <= p.n_max; ++n) {
            plus[n - 1][k] = static_cast<double>(n) * t.plus(n);
            minus[n - 1][k] = static_cast<double>(n) * t.minus(n);
        }
        masked[k] = m.masked_area;
        cap[k] = m.max_abs();
    });

    experiment_report r;
    r.body = detail::header("dn_scan", {{"steps", p.steps},
                                        {"paths", p.paths},
                                        {"grid", p.grid},
                                        {"n_max", p.n_max},
                                        {"seed", p.seed}});
    const auto masked_m = detail::mean_and_error(masked);
    json rows = json::array();
    std::vector<detail::moments> stats;
    for (std::size_t n = 1; n <= p.n_max; ++n) {
        const auto s = detail::mean_and_error(plus[n - 1]);
        const auto sm = detail::mean_and_error(minus[n - 1]);
        stats.push_back(s);
        const bool empty = s.mean == 0.0 && sm.mean == 0.0;
        rows.push_back({{"N", n},
                        {"mean_ND", s.mean},
                        {"std_error", detail::number_or_null(s.std_error)},
                        {"mean_ND_minus", sm.mean},
                        {"std_error_minus", detail::number_or_null(sm.std_error)},
                        {"masked_bound", static_cast<double>(n) * masked_m.mean},
                        {"empty", empty},
                        {"remainder_log", std::pow(static_cast<double>(n), 1.25) * std::abs(s.mean - inv_two_pi)}});
    }
    if (p.paths == 1) {
        for (auto &row : rows) {
            row.erase("std_error");
            row.erase("std_error_minus");
        }
    }
    r.body["results"] = {{"target", inv_two_pi}, {"table", rows}};
    r.body["diagnostics"] = {{"mean_masked_area", masked_m.mean},
                             {"max_winding_cap", *std::max_element(cap.begin(), cap.end())}};

    if (!p.table_csv.empty()) {
        auto out = detail::open_out(p.table_csv);
        out << "N,mean_ND,std_error,masked_bound\n";
        char buf[128];
        for (std::size_t n = 1; n <= p.n_max; ++n) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", n, stats[n - 1].mean,
                          stats[n - 1].std_error.value_or(0.0), static_cast<double>(n) * masked_m.mean);
            out << buf;
        }
    }

    // N D_N within 15% of 1/(2 pi) for N = 1..4, and the deviation from the
    // target does not grow from N = 1 to N = 2 by more than a standard error.
    const std::size_t checked = std::min<std::size_t>(4, p.n_max);
    for (std::size_t n = 1; n <= checked; ++n) {
        const double rel = std::abs(stats[n - 1].mean - inv_two_pi) / inv_two_pi;
        r.check(rel <= 0.15, "N=" + std::to_string(n) + ": |N D_N - 1/(2pi)| / (1/(2pi)) = " + std::to_string(rel) + " > 0.15");
    }
    if (p.n_max >= 2) {
        const double d1 = std::abs(stats[0].mean - inv_two_pi);
        const double d2 = std::abs(stats[1].mean - inv_two_pi);
        const double se = std::hypot(stats[0].std_error.value_or(0.0), stats[1].std_error.value_or(0.0));
        r.check(d2 - d1 <= se, "deviation grows from N=1 to N=2 by more than the standard error");
    }
    detail::finish(r, clock, p.timing);
    return r;
}

// -------------------------------------------------------- position_vs_levy

struct position_vs_levy_params {
    std::size_t steps = 1u << 16;
    std::size_t paths = 100;
    std::size_t grid = 2048;
    rng_seed seed = 1;
    std::string source = "brownian";  // or "circle": circles of radius 0.5 + k / paths
    unsigned workers = 1;
    bool timing = true;
};

inline experiment_report cmd_position_vs_levy(const position_vs_levy_params &p) {
    detail::stopwatch clock;
    if (p.steps < 1 || p.paths < 1 || p.grid < 1) throw error(errc::usage, "steps, paths and grid must be positive");
    if (p.source != "brownian" && p.source != "circle") throw error(errc::usage, "--source must be brownian or circle");

    std::vector<double> position(p.paths), levy(p.paths), masked(p.paths);
    parallel_for(p.paths, p.workers, [&](std::size_t k) {
        const planar_path path =
            p.source == "circle"
                ? curves::polygon(4096, 1, 0.5 + static_cast<double>(k) / static_cast<double>(p.paths))
                : ensemble_path(p.steps, p.seed, k);
        const winding_measure m = measure_from_field(compute_winding_field(path, grid_spec::covering(path, p.grid)));
        position[k] = position_parameter(tails(m));
        levy[k] = levy_area(path, scheme::trapezoid);
        masked[k] = m.masked_area;
    });

    experiment_report r;
    r.body = detail::header("position_vs_levy", {{"steps", p.steps},
                                                 {"paths", p.paths},
                                                 {"grid", p.grid},
                                                 {"seed", p.seed},
                                                 {"source", p.source}});
    json pairs = json::array();
    for (std::size_t k = 0; k < p.paths; ++k)
        pairs.push_back({{"path", k}, {"position", position[k]}, {"levy_area", levy[k]}, {"masked_area", masked[k]}});
    r.body["results"] = {{"pairs", pairs}};
    if (p.paths >= 2) {
        const auto reg = detail::regress(levy, position);
        r.body["results"]["correlation"] = detail::number_or_null(reg.correlation);
        r.body["results"]["slope"] = detail::number_or_null(reg.slope);
        r.check(reg.correlation && *reg.correlation >= 0.95, "Pearson correlation below 0.95");
        r.check(reg.slope && *reg.slope >= 0.9 && *reg.slope <= 1.1, "regression slope outside [0.9, 1.1]");
    }
    detail::finish(r, clock, p.timing);
    return r;
}

// ---------------------------------------------------------- poisson_cauchy

struct poisson_cauchy_params {
    std::size_t steps = 1u << 16;
    double intensity = 1e4;
    std::size_t trials = 500;
    rng_seed seed = 1;
    std::size_t lineage_base = 0;     // nonzero: build the path by bridge refinement from this many steps
    std::string source = "brownian";  // or "circle": the unit-circle 4096-gon
    unsigned workers = 1;
    std::string ensemble_csv;         // optional `trial,S_K`
    bool timing = true;
};

inline experiment_report cmd_poisson_cauchy(const poisson_cauchy_params &p) {
    detail::stopwatch clock;
    if (p.steps < 1 || p.trials < 1) throw error(errc::usage, "steps and trials must be positive");
    if (!(p.intensity > 0.0)) throw error(errc::usage, "--K must be positive");
    if (p.source != "brownian" && p.source != "circle") throw error(errc::usage, "--source must be brownian or circle");

    std::vector<planar_path> lineage;
    if (p.source == "circle") {
        lineage.push_back(curves::polygon(4096));
    } else if (p.lineage_base > 0) {
        unsigned levels = 0;
        std::size_t s = p.lineage_base;
        while (s < p.steps) {
            s *= 2;
            ++levels;
        }
        if (s != p.steps) throw error(errc::usage, "--steps must be --lineage-base times a power of two");
        lineage = brownian_lineage(p.lineage_base, levels, p.seed);
    } else {
        lineage.push_back(sample_brownian(p.steps, p.seed));
    }
    const planar_path &path = lineage.back();
    const rng_seed trial_seed = derive_seed(p.seed, 0x706f6973u);

    experiment_report r;
    r.body = detail::header("poisson_cauchy", {{"steps", p.steps},
                                               {"K", p.intensity},
                                               {"trials", p.trials},
                                               {"seed", p.seed},
                                               {"lineage_base", p.lineage_base},
                                               {"source", p.source}});

    const trial_ensemble e = cauchy_trial_ensemble(path, p.intensity, p.trials, trial_seed, p.workers);
    const double a = levy_area(path, scheme::trapezoid);
    if (!p.ensemble_csv.empty()) {
        auto out = detail::open_out(p.ensemble_csv);
        out << "trial,S_K\n";
        char buf[64];
        for (std::size_t t = 0; t < e.values.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, e.values[t]);
            out << buf;
        }
    }

    json results = {{"K", p.intensity},
                    {"trials", p.trials},
                    {"levy_area", a},
                    {"shoelace_area", shoelace_area(path)},
                    {"skipped", e.skipped},
                    {"points", e.points}};
    try {
        const cauchy_params fit = quantile_fit(e.values);
        const double band = 3.0 * fit.scale / std::sqrt(static_cast<double>(p.trials)) * (std::numbers::pi / 2.0);
        const double ks = fit.scale > 0.0 ? ks_statistic(e.values, fit) : 1.0;
        const double ks_half = ks_statistic(e.values, cauchy_params{a, 0.5});
        results["position"] = fit.position;
        results["scale"] = fit.scale;
        results["ks"] = ks;
        results["ks_vs_levy_half"] = ks_half;
        results["position_band"] = band;
        results["fit"] = {{"position", fit.position}, {"scale", fit.scale}, {"ks", ks}, {"n", e.values.size()}};

        r.check(std::abs(fit.position - a) <= band, "fitted position outside 3 (pi/2) scale/sqrt(trials) of the Levy area");
        r.check(ks < ks_critical_5(p.trials), "KS against the fitted Cauchy law above the 5% critical value");
        r.check(fit.scale >= 0.25 && fit.scale <= 0.65, "fitted scale outside [0.25, 0.65]");
    } catch (const error &err) {
        if (err.code() != errc::too_few_samples) throw;
        results["fit"] = nullptr;
        results["fit_error"] = err.what();
        r.check(false, err.what());
    }

    if (lineage.size() > 1) {
        json levels = json::array();
        std::vector<double> scales;
        for (const auto &lp : lineage) {
            const trial_ensemble le = &lp == &path ? e : cauchy_trial_ensemble(lp, p.intensity, p.trials, trial_seed, p.workers);
            json row = {{"steps", lp.last()}, {"levy_area", levy_area(lp)}};
            if (le.values.size() >= 4) {
                const cauchy_params f = quantile_fit(le.values);
                row["position"] = f.position;
                row["scale"] = f.scale;
                scales.push_back(f.scale);
            }
            levels.push_back(row);
        }
        results["lineage"] = levels;
        if (scales.size() >= 2)
            r.check(scales.back() > scales.front(), "fitted scale does not increase along the refinement lineage");
    }
    r.body["results"] = results;
    detail::finish(r, clock, p.timing);
    return r;
}

// ------------------------------------------------------------ stokes_check

struct named_curve {
    std::string name;
    planar_path path;
    std::optional<double> analytic_area;
};

/// Built-in curves, or a single path read from CSV.
inline std::vector<named_curve> stokes_curves(const std::string &spec) {
    std::vector<named_curve> all;
    auto add = [&](const std::string &name) {
        if (name == "square") all.push_back({name, curves::unit_square(), 1.0});
        else if (name == "circle") all.push_back({name, curves::polygon(4096), 2048.0 * std::sin(2.0 * std::numbers::pi / 4096.0)});
        else if (name == "double_loop") all.push_back({name, curves::polygon(4096, 2), 4096.0 * std::sin(2.0 * std::numbers::pi / 4096.0)});
        else if (name == "parabola") all.push_back({name, curves::parabola(4097), 1.0 / 6.0});
        else if (name == "figure_eight") all.push_back({name, curves::figure_eight(2048), 0.0});
        else return false;
        return true;
    };
    if (spec == "suite" || spec.empty()) {
        for (const char *n : {"square", "circle", "double_loop", "parabola", "figure_eight"}) add(n);
    } else if (!add(spec)) {
        all.push_back({spec, read_path_csv(spec), std::nullopt});
    }
    return all;
}

struct stokes_check_params {
    std::string curve = "suite";
    std::size_t grid = 1024;
    unsigned workers = 1;
    bool timing = true;
};

inline experiment_report cmd_stokes_check(const stokes_check_params &p) {
    detail::stopwatch clock;
    if (p.grid < 1) throw error(errc::usage, "--grid must be positive");
    experiment_report r;
    r.body = detail::header("stokes_check", {{"curve", p.curve}, {"grid", p.grid}});
    json rows = json::array();
    for (const auto &c : stokes_curves(p.curve)) {
        const winding_field field = compute_winding_field(c.path, grid_spec::covering(c.path, p.grid), p.workers);
        const stokes_report s = stokes_residual(c.path, field);
        const winding_measure m = measure_from_field(field);
        json row = {{"curve", c.name},
                    {"vertices", c.path.size()},
                    {"levy_area", s.levy},
                    {"shoelace_area", shoelace_area(c.path)},
                    {"grid_integral", s.grid_integral},
                    {"moment_sum", moment_sum(m)},
                    {"residual", s.residual},
                    {"bound", s.bound},
                    {"within_bound", s.residual <= s.bound},
                    {"masked_area", s.masked_area},
                    {"max_abs_winding", s.max_abs_winding}};
        if (c.analytic_area) row["analytic_area"] = *c.analytic_area;
        rows.push_back(row);
        r.check(s.residual <= s.bound, c.name + ": Stokes residual exceeds its bound");
    }
    r.body["results"] = {{"curves", rows}};
    detail::finish(r, clock, p.timing);
    return r;
}

// ------------------------------------------------------------- young_check

struct young_check_params {
    std::string curve = "circle";  // circle | brownian | <path.csv>
    unsigned level_lo = 4;
    unsigned level_hi = 12;
    std::size_t steps = 1u << 16;  // brownian only
    rng_seed seed = 1;
    bool timing = true;
};

/// PL-skeleton convergence: at each dyadic level D, the gaps
/// |shoelace(skeleton_D) - reference area| and |left-point sum - reference
/// line integral|. The circle reference is analytic (pi); for a path the
/// reference is the full-resolution polyline.
inline experiment_report cmd_young_check(const young_check_params &p) {
    detail::stopwatch clock;
    if (p.level_lo > p.level_hi || p.level_hi > 30) throw error(errc::usage, "need level-lo <= level-hi <= 30");
    experiment_report r;
    r.body = detail::header("young_check", {{"curve", p.curve},
                                            {"level_lo", p.level_lo},
                                            {"level_hi", p.level_hi},
                                            {"steps", p.steps},
                                            {"seed", p.seed}});

    json rows = json::array();
    std::vector<double> shoelace_gaps, young_gaps;
    std::optional<double> full_gap;
    if (p.curve == "circle") {
        const std::size_t n = std::size_t{1} << p.level_hi;
        std::vector<point> pts(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            pts[k] = {std::cos(a), std::sin(a)};
        }
        pts.back() = pts.front();
        const planar_path fine = planar_path::uniform(std::move(pts));
        const auto xs = x_series(fine), ys = y_series(fine);
        for (unsigned level = p.level_lo; level <= p.level_hi; ++level) {
            const dissection d = dyadic_refinement(level, level).front();
            const double sk = shoelace_area(pl_skeleton(fine, d));
            const double yi = young_integral(fine.times(), xs, ys, {d}).value;
            shoelace_gaps.push_back(std::abs(sk - std::numbers::pi));
            young_gaps.push_back(std::abs(yi - std::numbers::pi));
            rows.push_back({{"level", level}, {"dissection_size", d.size()}, {"shoelace_gap", shoelace_gaps.back()}, {"young_gap", young_gaps.back()}});
        }
    } else {
        const planar_path path = p.curve == "brownian" ? sample_brownian(p.steps, p.seed) : read_path_csv(p.curve);
        const double ref_area = shoelace_area(path);
        const double ref_line = line_integral_x_dy(path);
        const auto xs = x_series(path), ys = y_series(path);
        const std::size_t edges = path.last();
        for (unsigned level = p.level_lo; level <= p.level_hi; ++level) {
            const std::size_t pieces = std::size_t{1} << level;
            if (pieces > edges) break;
            const std::size_t stride = edges / pieces;
            std::vector<double> t;
            for (std::size_t i = 0; i < edges; i += stride) t.push_back(path.times()[i]);
            t.push_back(1.0);
            const dissection d(std::move(t));
            const double sk = shoelace_area(pl_skeleton(path, d));
            const double yi = young_integral(path.times(), xs, ys, {d}).value;
            shoelace_gaps.push_back(std::abs(sk - ref_area));
            young_gaps.push_back(std::abs(yi - ref_line));
            rows.push_back({{"level", level}, {"dissection_size", d.size()}, {"shoelace_gap", shoelace_gaps.back()}, {"young_gap", young_gaps.back()}});
        }
        // Full dissection: the skeleton is the path itself.
        std::vector<double> all(path.times());
        const double sk = shoelace_area(pl_skeleton(path, dissection(all)));
        full_gap = std::abs(sk - ref_area);
    }

    auto monotone = [](const std::vector<double> &g) {
        for (std::size_t i = 1; i < g.size(); ++i)
            if (g[i] > g[i - 1]) return false;
        return true;
    };
    const bool sm = monotone(shoelace_gaps), ym = monotone(young_gaps);
    r.body["results"] = {{"levels", rows}, {"shoelace_monotone", sm}, {"young_monotone", ym}};
    if (full_gap) r.body["results"]["full_dissection_shoelace_gap"] = *full_gap;
    if (!shoelace_gaps.empty()) {
        if (p.curve == "circle") {
            r.check(sm, "shoelace gap is not monotonically decreasing");
            r.check(ym, "Young gap is not monotonically decreasing");
        } else {
            r.check(shoelace_gaps.back() <= shoelace_gaps.front(), "shoelace gap did not decrease");
            r.check(young_gaps.back() <= young_gaps.front(), "Young gap did not decrease");
        }
    }
    detail::finish(r, clock, p.timing);
    return r;
}

} // namespace windarea

#endif
