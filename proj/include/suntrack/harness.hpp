#pragma once

#include <chrono>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"
#include "suntrack/mec.hpp"
#include "suntrack/mtm.hpp"

namespace suntrack {

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/// One measured point of a parameter sweep. For threshold sweeps the
/// objective is the minimal movement count; for budget sweeps it is the
/// collected energy. Infeasible points carry zeroed objectives.
struct SweepRow {
    double param = 0.0;
    double objective = 0.0;
    double energy = 0.0;
    bool feasible = false;
    double wall_time_ms = 0.0;
};

/// Minimum-rotation solves over ascending lower thresholds with the upper
/// threshold fixed. Sweeping stops after the first infeasible point: the
/// feasible region is a prefix because raising u1 only shrinks the band.
/// Points with u1 > u2 have an empty band and are reported infeasible
/// without invoking the solver.
inline std::vector<SweepRow> sweep_u1(const IrradianceGrid& grid, double u2,
                                      const std::vector<double>& u1_values, PathKind kind) {
    validate_grid(grid);
    for (std::size_t t = 1; t < u1_values.size(); ++t)
        if (u1_values[t] < u1_values[t - 1]) throw ParamError("u1 values must be ascending");

    std::vector<SweepRow> rows;
    for (double u1 : u1_values) {
        SweepRow row;
        row.param = u1;
        if (u1 <= u2) {
            detail::Stopwatch clock;
            const MtmParams params{u1, u2, 0, kind};
            const auto sol =
                kind == PathKind::NoLeft ? solve_mtm_nl(grid, params) : solve_mtm(grid, params);
            row.wall_time_ms = clock.ms();
            if (sol) {
                row.feasible = true;
                row.objective = sol->counts.movements;
                row.energy = sol->energy;
            }
        }
        rows.push_back(row);
        if (!row.feasible) break;
    }
    return rows;
}

struct MovesSweepResult {
    std::vector<SweepRow> rows;
    /// Smallest swept budget whose energy is within 1% of the last budget's.
    int plateau_onset_budget = 0;
};

/// Maximum-energy solves over ascending movement budgets.
inline MovesSweepResult sweep_moves(const IrradianceGrid& grid,
                                    const std::vector<int>& moves_values, PathKind kind) {
    validate_grid(grid);
    if (moves_values.empty()) throw ParamError("budget sweep needs at least one value");
    for (std::size_t t = 0; t < moves_values.size(); ++t) {
        if (moves_values[t] < 0) throw ParamError("budgets must be non-negative");
        if (t > 0 && moves_values[t] < moves_values[t - 1])
            throw ParamError("budgets must be ascending");
    }

    MovesSweepResult result;
    for (int budget : moves_values) {
        SweepRow row;
        row.param = budget;
        detail::Stopwatch clock;
        const MecSolution sol =
            solve_mec_any(grid, {budget, BudgetKind::Movements, 0, kind});
        row.wall_time_ms = clock.ms();
        row.feasible = true;
        row.objective = sol.energy;
        row.energy = sol.energy;
        result.rows.push_back(row);
    }
    const double top_energy = result.rows.back().energy;
    result.plateau_onset_budget = moves_values.back();
    for (std::size_t t = 0; t < result.rows.size(); ++t) {
        if (result.rows[t].energy >= 0.99 * top_energy) {
            result.plateau_onset_budget = moves_values[t];
            break;
        }
    }
    return result;
}

struct WholeDayResult {
    double energy = 0.0;
    int movements = 0;
    double wall_time_ms = 0.0;
};

struct IntervalResult {
    int start_row = 0;
    int end_row = 0; ///< inclusive; equals the next interval's start_row
    int start_col = 0;
    double energy = 0.0;
    int movements = 0;
    double wall_time_ms = 0.0; ///< budget solve only, fraction search excluded
    double energy_95 = 0.0;
    int movements_95 = 0;
};

struct ForecastAggregate {
    double total_energy = 0.0;
    int total_movements = 0;
    double total_energy_95 = 0.0;
    int total_movements_95 = 0;
    double total_wall_time_ms = 0.0;
    double reduction_vs_whole_day_pct = 0.0; ///< fraction-target moves vs whole-day moves
    double reduction_vs_intervals_pct = 0.0; ///< fraction-target moves vs interval moves
};

struct ForecastReport {
    int k = 1;
    int per_interval_budget = 0;
    double fraction = 1.0;
    PathKind kind = PathKind::General;
    bool chained = true;
    WholeDayResult whole_day;
    std::vector<IntervalResult> intervals;
    ForecastAggregate aggregate;
};

/// Splits the day into k contiguous forecast intervals, solves each under the
/// per-interval budget, then finds the minimal-movement schedule reaching the
/// energy fraction inside each interval. Consecutive intervals share their
/// boundary row so every row crossing is owned by exactly one interval, and,
/// unless `chained` is off, each interval starts at the column where the
/// previous one ended (a tracker cannot teleport).
inline ForecastReport forecast_run(const IrradianceGrid& grid, int k, int per_interval_budget,
                                   double fraction, PathKind kind, bool chained = true) {
    validate_grid(grid);
    if (k < 1 || k > grid.n_rows / 2)
        throw PartitionError("cannot split " + std::to_string(grid.n_rows) + " rows into " +
                             std::to_string(k) + " intervals");
    if (per_interval_budget < 0) throw ParamError("budget must be non-negative");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ParamError("fraction must lie in (0, 1]");

    ForecastReport report;
    report.k = k;
    report.per_interval_budget = per_interval_budget;
    report.fraction = fraction;
    report.kind = kind;
    report.chained = chained;

    {
        detail::Stopwatch clock;
        const MecSolution whole =
            solve_mec_any(grid, {per_interval_budget, BudgetKind::Movements, 0, kind});
        report.whole_day.wall_time_ms = clock.ms();
        report.whole_day.energy = whole.energy;
        report.whole_day.movements = whole.counts.movements;
    }

    // Near-equal bands over the rows; the first n_rows mod k bands get one
    // extra row. Interval b spans its band plus the first row of band b+1.
    const int base = grid.n_rows / k;
    const int extra = grid.n_rows % k;
    int band_start = 0;
    int start_col = 0;
    for (int b = 0; b < k; ++b) {
        const int band_size = base + (b < extra ? 1 : 0);
        const int band_end = band_start + band_size; // first row of the next band
        IntervalResult iv;
        iv.start_row = band_start;
        iv.end_row = b + 1 < k ? band_end : grid.n_rows - 1;
        iv.start_col = start_col;

        const IrradianceGrid sub = slice_rows(grid, iv.start_row, iv.end_row);
        detail::Stopwatch clock;
        const MecSolution sol =
            solve_mec_any(sub, {per_interval_budget, BudgetKind::Movements, start_col, kind});
        iv.wall_time_ms = clock.ms();
        iv.energy = sol.energy;
        iv.movements = sol.counts.movements;

        const FractionSearchResult frac =
            min_moves_for_fraction(sub, kind, fraction, per_interval_budget, start_col);
        iv.energy_95 = frac.solution.energy;
        iv.movements_95 = frac.solution.counts.movements;

        report.intervals.push_back(iv);
        if (chained) start_col = sol.path.waypoints.back().col;
        band_start = band_end;
    }

    auto& agg = report.aggregate;
    for (const auto& iv : report.intervals) {
        agg.total_energy += iv.energy;
        agg.total_movements += iv.movements;
        agg.total_energy_95 += iv.energy_95;
        agg.total_movements_95 += iv.movements_95;
        agg.total_wall_time_ms += iv.wall_time_ms;
    }
    if (report.whole_day.movements > 0)
        agg.reduction_vs_whole_day_pct =
            100.0 * (report.whole_day.movements - agg.total_movements_95) /
            report.whole_day.movements;
    if (agg.total_movements > 0)
        agg.reduction_vs_intervals_pct =
            100.0 * (agg.total_movements - agg.total_movements_95) / agg.total_movements;
    return report;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "param,objective,feasible,time_ms\n";
    for (const auto& r : rows)
        out << detail::format_double(r.param) << ',' << detail::format_double(r.objective) << ','
            << (r.feasible ? 1 : 0) << ',' << detail::format_double(r.wall_time_ms) << '\n';
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write sweep report '" + path + "'");
    write_sweep_csv(rows, out);
    out.flush();
    if (!out) throw IoError("failed while writing sweep report '" + path + "'");
}

/// One row in the column order of the forecast experiment tables:
/// whole-day energy and time, then interval totals, then the
/// fraction-target totals.
inline void write_forecast_csv(const ForecastReport& rep, std::ostream& out) {
    out << "mec,time_ms,fi_mec,fi_moves,fi_time_ms,fi_energy_95,fi_moves_95\n";
    out << detail::format_double(rep.whole_day.energy) << ','
        << detail::format_double(rep.whole_day.wall_time_ms) << ','
        << detail::format_double(rep.aggregate.total_energy) << ','
        << rep.aggregate.total_movements << ','
        << detail::format_double(rep.aggregate.total_wall_time_ms) << ','
        << detail::format_double(rep.aggregate.total_energy_95) << ','
        << rep.aggregate.total_movements_95 << '\n';
}

inline void write_forecast_csv(const ForecastReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write forecast report '" + path + "'");
    write_forecast_csv(rep, out);
    out.flush();
    if (!out) throw IoError("failed while writing forecast report '" + path + "'");
}

} // namespace suntrack
