// Command-line front end: synthetic day generation, both solvers, parameter
// sweeps, the forecast-interval experiment, and solver certification against
// the brute-force oracle.
//
// Exit codes: 0 success, 1 input or usage error, 2 valid run on an
// infeasible instance (minimum-rotation problem only).

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "suntrack/serialize.hpp"
#include "suntrack/suntrack.hpp"

namespace {

using suntrack::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonOpts {
    std::string grid_path;
    std::string meta_path;
    std::string out_path;
    bool no_left = false;
    bool no_timings = false;
    int start_col = 0;
};

void add_input_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--grid", o.grid_path, "weight matrix CSV")->required();
    cmd->add_option("--meta", o.meta_path, "metadata file")->required();
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw suntrack::IoError("cannot write output file '" + out_path + "'");
    out << j.dump(2) << '\n';
}

suntrack::PathKind kind_of(const CommonOpts& o) {
    return o.no_left ? suntrack::PathKind::NoLeft : suntrack::PathKind::General;
}

int run_oracle_check(int max_size, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    int checks = 0;
    for (int trial = 0; trial < trials; ++trial) {
        suntrack::IrradianceGrid g;
        g.n_cols = 2 + static_cast<int>(rng() % (max_size - 1));
        g.n_rows = 2 + static_cast<int>(rng() % (max_size - 1));
        g.weights.resize(static_cast<std::size_t>(g.n_cols) * g.n_rows);
        for (auto& w : g.weights) w = static_cast<double>(rng() % 10);

        for (suntrack::PathKind kind :
             {suntrack::PathKind::General, suntrack::PathKind::NoLeft}) {
            for (int u1 = 0; u1 <= 9; ++u1) {
                for (int u2 = u1; u2 <= 9; ++u2) {
                    const suntrack::MtmParams params{static_cast<double>(u1),
                                                     static_cast<double>(u2), 0, kind};
                    const auto got = kind == suntrack::PathKind::NoLeft
                                         ? suntrack::solve_mtm_nl(g, params)
                                         : suntrack::solve_mtm(g, params);
                    const auto want = suntrack::oracle_mtm(g, u1, u2, kind);
                    const bool agree =
                        got.has_value() == want.has_value() &&
                        (!got || got->counts.turns == *want);
                    if (!agree) {
                        std::cerr << "mismatch: trial " << trial << " kind "
                                  << suntrack::to_string(kind) << " u1 " << u1 << " u2 " << u2
                                  << '\n';
                        return kExitError;
                    }
                    ++checks;
                }
            }
            for (int budget = 0; budget <= 4; ++budget) {
                const auto got = suntrack::solve_mec_any(
                    g, {budget, suntrack::BudgetKind::Movements, 0, kind});
                const double want = suntrack::oracle_mec(g, budget, kind);
                if (got.weight_sum != want) {
                    std::cerr << "mismatch: trial " << trial << " kind "
                              << suntrack::to_string(kind) << " budget " << budget << '\n';
                    return kExitError;
                }
                ++checks;
            }
        }
    }
    Json j;
    j["trials"] = trials;
    j["checks"] = checks;
    j["message"] = std::to_string(trials) + "/" + std::to_string(trials) + " agree";
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"suntrack: single-axis solar tracker scheduling on irradiance grids"};
    app.require_subcommand(1);
    std::function<int()> action;

    // gen -------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("gen", "generate a synthetic irradiance day");
        auto cfg = std::make_shared<suntrack::SynthConfig>();
        auto out_grid = std::make_shared<std::string>();
        auto out_meta = std::make_shared<std::string>();
        auto clouds = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--grid", *out_grid, "output matrix CSV")->required();
        cmd->add_option("--meta", *out_meta, "output metadata file")->required();
        cmd->add_option("--cols", cfg->n_cols, "tracker angle samples")->required();
        cmd->add_option("--rows", cfg->n_rows, "sun time samples")->required();
        cmd->add_option("--peak-dni", cfg->peak_dni, "midday DNI peak");
        cmd->add_option("--accept", cfg->acceptance_halfwidth_cols,
                        "acceptance window half width, columns");
        cmd->add_option("--falloff", cfg->falloff_cols, "falloff width, columns");
        cmd->add_option("--cloud", *clouds,
                        "cloud event start:end:attenuation (repeatable)");
        cmd->add_option("--jitter", cfg->jitter, "per-row DNI jitter in [0,1)");
        cmd->add_option("--seed", cfg->rng_seed, "jitter seed");
        cmd->add_option("--eps", cfg->eps_deg, "angular cell size, degrees");
        cmd->add_option("--sca-start", cfg->sca_start_deg, "angle of column 0, degrees");
        cmd->add_option("--time-step", cfg->time_step_min, "row duration, minutes");
        cmd->add_option("--scale", cfg->scale, "divisor applied to raw values");
        cmd->callback([&action, cfg, out_grid, out_meta, clouds] {
            action = [cfg, out_grid, out_meta, clouds]() {
                for (const auto& spec : *clouds) {
                    suntrack::CloudEvent ev;
                    char sep1 = 0, sep2 = 0;
                    std::istringstream in(spec);
                    if (!(in >> ev.start_row >> sep1 >> ev.end_row >> sep2 >> ev.attenuation) ||
                        sep1 != ':' || sep2 != ':')
                        throw suntrack::ParamError("--cloud expects start:end:attenuation, got '" +
                                                   spec + "'");
                    cfg->cloud_events.push_back(ev);
                }
                const suntrack::IrradianceGrid g = suntrack::synth_day(*cfg);
                suntrack::save_grid(g, *out_grid, *out_meta);
                Json j;
                j["grid"] = *out_grid;
                j["meta"] = *out_meta;
                j["cols"] = g.n_cols;
                j["rows"] = g.n_rows;
                j["max_weight"] = suntrack::global_max(g);
                std::cout << j.dump(2) << '\n';
                return kExitOk;
            };
        });
    }

    // solve-mtm ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("solve-mtm",
                                       "fewest rotations keeping collection inside [u1, u2]");
        auto o = std::make_shared<CommonOpts>();
        auto u1 = std::make_shared<double>(0.0);
        auto u2 = std::make_shared<double>(0.0);
        add_input_options(cmd, *o);
        cmd->add_option("--u1", *u1, "lower collection threshold")->required();
        cmd->add_option("--u2", *u2, "upper collection threshold")->required();
        cmd->add_flag("--no-left", o->no_left, "forbid leftward rotations");
        cmd->add_option("--start-col", o->start_col, "starting tracker column");
        cmd->add_option("--out", o->out_path, "write the JSON result to a file");
        cmd->add_flag("--no-timings", o->no_timings, "omit wall times from the output");
        cmd->callback([&action, o, u1, u2] {
            action = [o, u1, u2]() {
                const auto grid = suntrack::load_grid(o->grid_path, o->meta_path);
                const suntrack::MtmParams params{*u1, *u2, o->start_col, kind_of(*o)};
                suntrack::detail::Stopwatch clock;
                const auto sol = o->no_left ? suntrack::solve_mtm_nl(grid, params)
                                            : suntrack::solve_mtm(grid, params);
                const double elapsed = clock.ms();
                if (!sol) {
                    Json j;
                    j["feasible"] = false;
                    j["status"] = "infeasible";
                    emit(j, o->out_path);
                    return kExitInfeasible;
                }
                Json j = suntrack::mtm_solution_to_json(*sol, grid);
                if (!o->no_timings) j["wall_time_ms"] = elapsed;
                emit(j, o->out_path);
                return kExitOk;
            };
        });
    }

    // solve-mec ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("solve-mec",
                                       "most energy within a rotation budget");
        auto o = std::make_shared<CommonOpts>();
        auto moves = std::make_shared<int>(0);
        auto waypoints = std::make_shared<int>(0);
        add_input_options(cmd, *o);
        auto* mv = cmd->add_option("--moves", *moves, "rotation budget");
        auto* wp = cmd->add_option("--waypoints", *waypoints, "waypoint budget (alternative)");
        mv->excludes(wp);
        cmd->add_flag("--no-left", o->no_left, "forbid leftward rotations");
        cmd->add_option("--start-col", o->start_col, "starting tracker column");
        cmd->add_option("--out", o->out_path, "write the JSON result to a file");
        cmd->add_flag("--no-timings", o->no_timings, "omit wall times from the output");
        cmd->callback([&action, o, moves, waypoints, mv, wp] {
            action = [o, moves, waypoints, mv, wp]() {
                if (mv->count() == 0 && wp->count() == 0)
                    throw suntrack::ParamError("solve-mec needs --moves or --waypoints");
                const auto grid = suntrack::load_grid(o->grid_path, o->meta_path);
                suntrack::MecParams params;
                params.kind = kind_of(*o);
                params.start_col = o->start_col;
                if (wp->count() > 0) {
                    params.budget_kind = suntrack::BudgetKind::Waypoints;
                    params.moves_budget = *waypoints;
                } else {
                    params.budget_kind = suntrack::BudgetKind::Movements;
                    params.moves_budget = *moves;
                }
                suntrack::detail::Stopwatch clock;
                const auto sol = suntrack::solve_mec_any(grid, params);
                const double elapsed = clock.ms();
                Json j = suntrack::mec_solution_to_json(sol, grid);
                if (!o->no_timings) j["wall_time_ms"] = elapsed;
                emit(j, o->out_path);
                return kExitOk;
            };
        });
    }

    // sweep-u1 ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("sweep-u1",
                                       "minimum rotations over ascending lower thresholds");
        auto o = std::make_shared<CommonOpts>();
        auto u2 = std::make_shared<double>(-1.0);
        auto u1_min = std::make_shared<double>(0.0);
        auto u1_max = std::make_shared<double>(-1.0);
        auto u1_step = std::make_shared<double>(0.0);
        add_input_options(cmd, *o);
        auto* u2opt = cmd->add_option("--u2", *u2, "upper threshold (default: grid maximum)");
        cmd->add_option("--u1-min", *u1_min, "first lower threshold");
        auto* maxopt =
            cmd->add_option("--u1-max", *u1_max, "last lower threshold (default: u2)");
        cmd->add_option("--u1-step", *u1_step, "threshold step")->required();
        cmd->add_flag("--no-left", o->no_left, "forbid leftward rotations");
        cmd->add_option("--out", o->out_path, "write the sweep CSV to a file");
        cmd->add_flag("--no-timings", o->no_timings, "omit wall times from the output");
        cmd->callback([&action, o, u2, u1_min, u1_max, u1_step, u2opt, maxopt] {
            action = [o, u2, u1_min, u1_max, u1_step, u2opt, maxopt]() {
                const auto grid = suntrack::load_grid(o->grid_path, o->meta_path);
                const double top = u2opt->count() ? *u2 : suntrack::global_max(grid);
                const double last = maxopt->count() ? *u1_max : top;
                if (!(*u1_step > 0)) throw suntrack::ParamError("--u1-step must be positive");
                std::vector<double> values;
                for (double v = *u1_min; v <= last + 1e-12; v += *u1_step) values.push_back(v);
                if (values.empty()) throw suntrack::ParamError("empty threshold range");
                const auto rows = suntrack::sweep_u1(grid, top, values, kind_of(*o));
                if (!o->out_path.empty()) {
                    suntrack::write_sweep_csv(rows, o->out_path);
                } else {
                    Json j;
                    j["u2"] = top;
                    j["rows"] = suntrack::sweep_rows_to_json(rows, !o->no_timings);
                    std::cout << j.dump(2) << '\n';
                }
                return kExitOk;
            };
        });
    }

    // sweep-moves -------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("sweep-moves",
                                       "maximum energy over ascending rotation budgets");
        auto o = std::make_shared<CommonOpts>();
        auto mv_min = std::make_shared<int>(0);
        auto mv_max = std::make_shared<int>(0);
        auto mv_step = std::make_shared<int>(1);
        add_input_options(cmd, *o);
        cmd->add_option("--moves-min", *mv_min, "first budget");
        cmd->add_option("--moves-max", *mv_max, "last budget")->required();
        cmd->add_option("--moves-step", *mv_step, "budget step");
        cmd->add_flag("--no-left", o->no_left, "forbid leftward rotations");
        cmd->add_option("--out", o->out_path, "write the sweep CSV to a file");
        cmd->add_flag("--no-timings", o->no_timings, "omit wall times from the output");
        cmd->callback([&action, o, mv_min, mv_max, mv_step] {
            action = [o, mv_min, mv_max, mv_step]() {
                const auto grid = suntrack::load_grid(o->grid_path, o->meta_path);
                if (*mv_step <= 0) throw suntrack::ParamError("--moves-step must be positive");
                std::vector<int> values;
                for (int v = *mv_min; v <= *mv_max; v += *mv_step) values.push_back(v);
                if (values.empty()) throw suntrack::ParamError("empty budget range");
                const auto result = suntrack::sweep_moves(grid, values, kind_of(*o));
                if (!o->out_path.empty()) {
                    suntrack::write_sweep_csv(result.rows, o->out_path);
                } else {
                    Json j;
                    j["plateau_onset_budget"] = result.plateau_onset_budget;
                    j["rows"] = suntrack::sweep_rows_to_json(result.rows, !o->no_timings);
                    std::cout << j.dump(2) << '\n';
                }
                return kExitOk;
            };
        });
    }

    // forecast ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("forecast",
                                       "k-interval forecast experiment with an energy target");
        auto o = std::make_shared<CommonOpts>();
        auto k = std::make_shared<int>(2);
        auto moves = std::make_shared<int>(0);
        auto fraction = std::make_shared<double>(0.95);
        auto reset = std::make_shared<bool>(false);
        auto out_csv = std::make_shared<std::string>();
        add_input_options(cmd, *o);
        cmd->add_option("--k", *k, "number of forecast intervals")->required();
        cmd->add_option("--moves", *moves, "rotation budget per interval")->required();
        cmd->add_option("--fraction", *fraction, "per-interval energy target in (0, 1]");
        cmd->add_flag("--no-left", o->no_left, "forbid leftward rotations");
        cmd->add_flag("--reset", *reset,
                      "restart every interval at column 0 instead of chaining");
        cmd->add_option("--out", o->out_path, "write the JSON report to a file");
        cmd->add_option("--out-csv", *out_csv, "write the table-style CSV report to a file");
        cmd->add_flag("--no-timings", o->no_timings, "omit wall times from the output");
        cmd->callback([&action, o, k, moves, fraction, reset, out_csv] {
            action = [o, k, moves, fraction, reset, out_csv]() {
                const auto grid = suntrack::load_grid(o->grid_path, o->meta_path);
                const auto report = suntrack::forecast_run(grid, *k, *moves, *fraction,
                                                           kind_of(*o), !*reset);
                if (!out_csv->empty()) suntrack::write_forecast_csv(report, *out_csv);
                const Json j = suntrack::forecast_report_to_json(report, !o->no_timings);
                if (!o->out_path.empty())
                    emit(j, o->out_path);
                else if (out_csv->empty())
                    std::cout << j.dump(2) << '\n';
                return kExitOk;
            };
        });
    }

    // oracle-check --------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("oracle-check",
                                       "certify both solvers against brute force enumeration");
        auto max_size = std::make_shared<int>(4);
        auto trials = std::make_shared<int>(100);
        auto seed = std::make_shared<unsigned>(0);
        cmd->add_option("--max-size", *max_size, "largest grid dimension (2..5)")
            ->check(CLI::Range(2, 5));
        cmd->add_option("--trials", *trials, "number of random grids")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", *seed, "random seed");
        cmd->callback([&action, max_size, trials, seed] {
            action = [max_size, trials, seed]() {
                return run_oracle_check(*max_size, *trials, *seed);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        return action();
    } catch (const suntrack::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitError;
    }
}
