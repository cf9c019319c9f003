// windarea: experiment runner for winding fields of chord-closed curves.
//
// Exit codes: 0 success, 1 runtime/I-O error, 2 usage error,
// 3 acceptance-threshold violation (only with --assert).

#include <windarea/experiments.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int exit_usage = 2;
constexpr int exit_assert = 3;

struct common_flags {
    std::string report;
    std::string config;
    unsigned workers = windarea::default_workers();
    bool assert_thresholds = false;
    bool no_timing = false;
};

void add_common(CLI::App *cmd, common_flags &c) {
    cmd->add_option("--report", c.report, "Write the JSON report here instead of stdout");
    cmd->add_option("--workers", c.workers, "Worker threads (default: $WINDAREA_WORKERS or 1)")->check(CLI::PositiveNumber);
    cmd->add_flag("--assert", c.assert_thresholds, "Exit with status 3 when an acceptance threshold is violated");
    cmd->add_flag("--no-timing", c.no_timing, "Omit the wall-clock field from the report");
    cmd->add_option("--config", c.config, "JSON object of flag values; overrides command-line flags");
}

// Expand a JSON config object into trailing `--key value` tokens. Options
// take their last occurrence, so config values win over earlier flags.
std::vector<std::string> config_tokens(const std::string &file) {
    std::ifstream in(file);
    if (!in) throw windarea::error(windarea::errc::io_error, "cannot open config '" + file + "'");
    windarea::json cfg;
    try {
        cfg = windarea::json::parse(in);
    } catch (const std::exception &e) {
        throw windarea::error(windarea::errc::usage, "config '" + file + "': " + e.what());
    }
    if (!cfg.is_object()) throw windarea::error(windarea::errc::usage, "config '" + file + "' must be a JSON object");
    std::vector<std::string> out;
    for (const auto &[key, value] : cfg.items()) {
        std::string flag = "--" + key;
        for (auto &ch : flag)
            if (ch == '_') ch = '-';
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back(flag);
        } else {
            out.push_back(flag);
            out.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return out;
}

std::string find_config(const std::vector<std::string> &args) {
    std::string found;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) found = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) found = args[i].substr(9);
    }
    return found;
}

int emit(const windarea::experiment_report &r, const common_flags &c) {
    const std::string text = r.body.dump(2) + "\n";
    if (c.report.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.report);
        if (!out) throw windarea::error(windarea::errc::io_error, "cannot open '" + c.report + "' for writing");
        out << text;
    }
    if (!r.assertions_passed) {
        for (const auto &f : r.failures) std::cerr << "threshold: " << f << '\n';
        if (c.assert_thresholds) return exit_assert;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    using namespace windarea;

    std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Winding fields, winding measures and Levy-area experiments for planar curves"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    common_flags common;

    simulate_params sim;
    auto *simulate = app.add_subcommand("simulate", "Sample a Brownian path and write it as CSV");
    simulate->add_option("--steps", sim.steps, "Number of steps")->required();
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--out", sim.out_path, "Output path CSV (t,x,y)")->required();
    add_common(simulate, common);

    dn_scan_params dn;
    auto *dn_scan = app.add_subcommand("dn-scan", "Ensemble means of N D_N over Brownian paths");
    dn_scan->add_option("--steps", dn.steps, "Steps per path");
    dn_scan->add_option("--paths", dn.paths, "Ensemble size");
    dn_scan->add_option("--grid", dn.grid, "Grid resolution (cells per side)");
    dn_scan->add_option("--n-max", dn.n_max, "Largest N");
    dn_scan->add_option("--seed", dn.seed, "Master seed");
    dn_scan->add_option("--table", dn.table_csv, "Write the N table as CSV");
    add_common(dn_scan, common);

    position_vs_levy_params pl;
    auto *pos = app.add_subcommand("position-vs-levy", "Tail-sum position parameter against the Levy area");
    pos->add_option("--steps", pl.steps, "Steps per path");
    pos->add_option("--paths", pl.paths, "Ensemble size");
    pos->add_option("--grid", pl.grid, "Grid resolution (cells per side)");
    pos->add_option("--seed", pl.seed, "Master seed");
    pos->add_option("--source", pl.source, "brownian or circle")->check(CLI::IsMember({"brownian", "circle"}));
    add_common(pos, common);

    poisson_cauchy_params pc;
    auto *poisson = app.add_subcommand("poisson-cauchy", "Poisson winding-sum ensemble and Cauchy fit");
    poisson->add_option("--steps", pc.steps, "Steps of the Brownian path");
    poisson->add_option("--K", pc.intensity, "Poisson intensity");
    poisson->add_option("--trials", pc.trials, "Number of independent clouds");
    poisson->add_option("--seed", pc.seed, "Master seed");
    poisson->add_option("--lineage-base", pc.lineage_base, "Build the path by bridge refinement from this many steps");
    poisson->add_option("--source", pc.source, "brownian or circle")->check(CLI::IsMember({"brownian", "circle"}));
    poisson->add_option("--ensemble", pc.ensemble_csv, "Write trial,S_K CSV");
    add_common(poisson, common);

    stokes_check_params sc;
    auto *stokes = app.add_subcommand("stokes-check", "Levy area against the grid integral of the winding field");
    stokes->add_option("--curve", sc.curve, "suite, square, circle, double_loop, parabola, figure_eight or a path CSV");
    stokes->add_option("--grid", sc.grid, "Grid resolution (cells per side)");
    add_common(stokes, common);

    young_check_params yc;
    auto *young = app.add_subcommand("young-check", "PL-skeleton convergence of areas and Young sums");
    young->add_option("--curve", yc.curve, "circle, brownian or a path CSV");
    young->add_option("--level-lo", yc.level_lo, "Coarsest dyadic level");
    young->add_option("--level-hi", yc.level_hi, "Finest dyadic level");
    young->add_option("--steps", yc.steps, "Steps of the Brownian path");
    young->add_option("--seed", yc.seed, "Seed of the Brownian path");
    add_common(young, common);

    try {
        if (const std::string cfg = find_config(args); !cfg.empty()) {
            const auto extra = config_tokens(cfg);
            args.insert(args.end(), extra.begin(), extra.end());
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    } catch (const error &e) {
        std::cerr << "windarea: " << e.what() << '\n';
        return e.code() == errc::usage ? exit_usage : 1;
    }

    try {
        const bool timing = !common.no_timing;
        if (*simulate) {
            sim.timing = timing;
            return emit(cmd_simulate(sim), common);
        }
        if (*dn_scan) {
            dn.workers = common.workers;
            dn.timing = timing;
            return emit(cmd_dn_scan(dn), common);
        }
        if (*pos) {
            pl.workers = common.workers;
            pl.timing = timing;
            return emit(cmd_position_vs_levy(pl), common);
        }
        if (*poisson) {
            pc.workers = common.workers;
            pc.timing = timing;
            return emit(cmd_poisson_cauchy(pc), common);
        }
        if (*stokes) {
            sc.workers = common.workers;
            sc.timing = timing;
            return emit(cmd_stokes_check(sc), common);
        }
        if (*young) {
            yc.timing = timing;
            return emit(cmd_young_check(yc), common);
        }
    } catch (const error &e) {
        std::cerr << "windarea: " << e.what() << '\n';
        return e.code() == errc::usage ? exit_usage : 1;
    }
    return exit_usage;
}
