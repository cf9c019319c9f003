// Acceptance suite: one PASS/FAIL line per criterion at the stated
// tolerances. Exits nonzero if any criterion fails.

#include "test_support.hpp"

#include <windarea/experiments.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace windarea;
using windarea::testing::random_point;
using windarea::testing::random_polyline;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *name, const std::function<outcome(double &)> &body) {
    const auto start = std::chrono::steady_clock::now();
    outcome o;
    double limit = 0.0;  // seconds; 0 = no hard runtime limit
    try {
        o = body(limit);
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0.0 && secs >= limit) {
        o.pass = false;
        o.detail += "; runtime limit " + std::to_string(limit) + " s exceeded";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-32s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::optional<int> try_wind(const planar_path &p, point z) {
    try {
        return winding_number(p, z);
    } catch (const error &) {
        return std::nullopt;
    }
}

std::string strip_timing(json j) {
    j.erase("timing");
    return j.dump();
}

std::string file_bytes(const std::string &f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    const unsigned workers = default_workers();
    std::printf("windarea acceptance suite (workers = %u)\n", workers);

    criterion(1, "PL Stokes identity", [](double &limit) {
        limit = 1.0;
        double worst = 0.0;
        for (rng_seed s = 0; s < 1000; ++s) {
            const auto p = random_polyline(2 + s % 499, derive_seed(1, s));
            const double a = levy_area(p), b = shoelace_area(p);
            const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
            if (std::abs(a - b) > 0.0) worst = std::max(worst, rel);
        }
        return outcome{worst <= 1e-12, fmt("max relative error %.3g over 1000 polylines", worst)};
    });

    criterion(2, "Winding oracle agreement", [](double &limit) {
        limit = 10.0;
        random_stream rng(2);
        std::size_t queries = 0, mismatches = 0;
        for (rng_seed s = 0; queries < 10000; ++s) {
            const auto p = random_polyline(3 + s % 98, derive_seed(2, s));
            for (int q = 0; q < 10; ++q) {
                const point z = random_point(rng, -0.25, 1.25);
                const auto w = try_wind(p, z);
                if (!w) continue;
                if (*w != angle_winding_oracle(p, z)) ++mismatches;
                ++queries;
            }
        }
        return outcome{mismatches == 0, fmt("%zu mismatches in %zu queries", mismatches, queries)};
    });

    criterion(3, "Concatenation additivity", [](double &) {
        random_stream rng(3);
        std::size_t checked = 0, violations = 0;
        for (rng_seed s = 0; s < 100; ++s) {
            const auto path = sample_brownian(1024, derive_seed(3, s));
            std::vector<double> t;
            for (std::size_t i = 0; i <= 8; ++i) t.push_back(path.times()[i * 128]);
            const auto skel = pl_skeleton(path, dissection(t));
            std::vector<planar_path> pieces;
            for (std::size_t i = 0; i < 8; ++i) pieces.push_back(restrict(path, i * 128, (i + 1) * 128));
            const auto box = bounds(path);
            for (int got = 0; got < 100;) {
                const point z{box.x_min + box.width() * rng.uniform(), box.y_min + box.height() * rng.uniform()};
                const auto whole = try_wind(path, z);
                const auto sk = try_wind(skel, z);
                if (!whole || !sk) continue;
                int sum = *sk;
                bool valid = true;
                for (const auto &piece : pieces) {
                    const auto w = try_wind(piece, z);
                    if (!w) {
                        valid = false;
                        break;
                    }
                    sum += *w;
                }
                if (!valid) continue;
                if (sum != *whole) ++violations;
                ++got;
                ++checked;
            }
        }
        return outcome{violations == 0, fmt("%zu violations in %zu points", violations, checked)};
    });

    criterion(4, "Analytic areas", [](double &limit) {
        limit = 30.0;
        const auto circle = measure_from_field(compute_winding_field(curves::polygon(4096), grid_spec::square(-1.5, 1.5, 1024)));
        const double c_rel = std::abs(circle.area(1) - std::numbers::pi) / std::numbers::pi;
        const auto par = curves::parabola(4097);
        const auto pm = measure_from_field(compute_winding_field(par, grid_spec::covering(par, 1024)));
        const double p_rel = std::abs(moment_sum(pm) - 1.0 / 6.0) * 6.0;
        return outcome{c_rel <= 0.01 && p_rel <= 0.01,
                       fmt("circle mu(1) = %.6f (rel %.2e); parabola moment_sum = %.6f (rel %.2e)", circle.area(1), c_rel,
                           moment_sum(pm), p_rel)};
    });

    criterion(5, "D_N law", [&](double &) {
        dn_scan_params p;
        p.steps = 1u << 16;
        p.paths = 200;
        p.grid = 2048;
        p.n_max = 8;
        p.workers = workers;
        p.timing = false;
        const auto r = cmd_dn_scan(p);
        std::string d = "N*D_N:";
        for (std::size_t n = 0; n < 4; ++n) {
            const auto &row = r.body["results"]["table"][n];
            d += fmt(" %.4f(+-%.4f)", row["mean_ND"].get<double>(), row["std_error"].get<double>());
        }
        d += fmt(" target %.5f; N^1.25 remainder:", inv_two_pi);
        for (std::size_t n = 0; n < 4; ++n) d += fmt(" %.3f", r.body["results"]["table"][n]["remainder_log"].get<double>());
        for (const auto &f : r.failures) d += "; " + f;
        return outcome{r.assertions_passed, d};
    });

    criterion(6, "Position parameter = Levy area", [&](double &) {
        position_vs_levy_params p;
        p.steps = 1u << 16;
        p.paths = 100;
        p.grid = 4096;
        p.workers = workers;
        p.timing = false;
        const auto r = cmd_position_vs_levy(p);
        return outcome{r.assertions_passed, fmt("grid 4096^2: correlation %.4f, slope %.4f",
                                                r.body["results"]["correlation"].get<double>(),
                                                r.body["results"]["slope"].get<double>())};
    });

    criterion(7, "Poisson Cauchy limit", [&](double &) {
        poisson_cauchy_params p;
        p.steps = 1u << 16;
        p.lineage_base = 1u << 12;
        p.intensity = 1e4;
        p.trials = 500;
        p.workers = workers;
        p.timing = false;
        const auto r = cmd_poisson_cauchy(p);
        const auto &res = r.body["results"];
        const double pos = res["position"], a = res["levy_area"], band = res["position_band"];
        const double scale = res["scale"], ks = res["ks"];
        std::string d = fmt("(a) |p-A| = %.4g vs band %.4g %s; (b) KS %.4f vs %.4f %s; (c) scale %.4f %s; lineage scales",
                            std::abs(pos - a), band, std::abs(pos - a) <= band ? "ok" : "FAIL", ks, ks_critical_5(500),
                            ks < ks_critical_5(500) ? "ok" : "FAIL", scale,
                            scale >= 0.25 && scale <= 0.65 ? "ok" : "FAIL");
        for (const auto &lv : res["lineage"]) d += fmt(" %zu:%.4f", lv["steps"].get<std::size_t>(), lv["scale"].get<double>());
        return outcome{r.assertions_passed, d};
    });

    criterion(8, "Banchoff-Pohl inequality", [](double &) {
        std::size_t violations = 0, checked = 0;
        double worst = 0.0;
        auto check = [&](const planar_path &p, std::size_t res) {
            const auto f = compute_winding_field(p, grid_spec::covering(p, res));
            const auto m = measure_from_field(f);
            const double len = curve_length(p);
            const double rhs = len * len / (4 * std::numbers::pi);
            const double inflation = f.masked_area() * std::pow(f.max_abs(), 2);
            const double lhs = second_moment(m);
            if (lhs > rhs + inflation) ++violations;
            worst = std::max(worst, lhs / rhs);
            ++checked;
        };
        for (rng_seed s = 0; s < 200; ++s) check(random_polyline(3 + s % 60, derive_seed(8, s)), 256);
        for (rng_seed s = 0; s < 50; ++s) check(sample_brownian(1u << 12, derive_seed(80, s)), 512);
        return outcome{violations == 0, fmt("%zu violations in %zu curves; max lhs/rhs %.3f", violations, checked, worst)};
    });

    criterion(9, "Poissonization", [&](double &) {
        const double lambda = 1e4;
        const std::size_t reps = 100;
        std::size_t below = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const auto src = sample_cauchy({0.0, 1.0}, 1000, derive_seed(9, 2 * rep));
            const auto [pois, fixed] = poissonization_check(src, lambda, derive_seed(9, 2 * rep + 1), 1000, workers);
            if (ks_two_sample(pois, fixed) < ks_two_sample_critical_1(pois.size(), fixed.size())) ++below;
        }
        return outcome{below >= 95, fmt("%zu of %zu repetitions below the 1%% critical value", below, reps)};
    });

    criterion(10, "Determinism", [](double &) {
        const std::string dir = (std::filesystem::temp_directory_path() / "windarea_acceptance").string();
        std::filesystem::create_directories(dir);
        std::vector<std::string> differing;
        auto compare = [&](const char *name, auto run) {
            if (strip_timing(run(1u).body) != strip_timing(run(3u).body)) differing.push_back(name);
        };
        std::vector<std::string> csv;
        compare("simulate", [&](unsigned) {
            simulate_params p;
            p.steps = 2048;
            p.seed = 10;
            p.out_path = dir + "/sim.csv";
            auto r = cmd_simulate(p);
            csv.push_back(file_bytes(p.out_path));
            return r;
        });
        if (csv[0] != csv[1]) differing.push_back("simulate csv");
        compare("dn_scan", [](unsigned w) {
            dn_scan_params p;
            p.steps = 4096;
            p.paths = 12;
            p.grid = 256;
            p.workers = w;
            return cmd_dn_scan(p);
        });
        compare("position_vs_levy", [](unsigned w) {
            position_vs_levy_params p;
            p.steps = 4096;
            p.paths = 12;
            p.grid = 256;
            p.workers = w;
            return cmd_position_vs_levy(p);
        });
        compare("poisson_cauchy", [](unsigned w) {
            poisson_cauchy_params p;
            p.steps = 4096;
            p.lineage_base = 1024;
            p.intensity = 500;
            p.trials = 40;
            p.workers = w;
            return cmd_poisson_cauchy(p);
        });
        compare("stokes_check", [](unsigned w) {
            stokes_check_params p;
            p.grid = 256;
            p.workers = w;
            return cmd_stokes_check(p);
        });
        compare("young_check", [](unsigned) {
            young_check_params p;
            p.curve = "brownian";
            p.steps = 4096;
            return cmd_young_check(p);
        });
        std::string d = "simulate, dn_scan, position_vs_levy, poisson_cauchy, stokes_check, young_check at 1 and 3 workers";
        for (const auto &n : differing) d += "; differs: " + n;
        return outcome{differing.empty(), d};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
