#pragma once

#include <json.hpp>

#include "suntrack/grid.hpp"
#include "suntrack/harness.hpp"
#include "suntrack/mec.hpp"
#include "suntrack/mtm.hpp"
#include "suntrack/path.hpp"

namespace suntrack {

using Json = nlohmann::ordered_json;

inline Json path_to_json(const GridPath& path, const IrradianceGrid& grid) {
    Json j;
    j["kind"] = to_string(path.kind);
    j["start_col"] = path.start_col;
    Json wps = Json::array();
    for (const auto& p : path.waypoints) wps.push_back(Json::array({p.col, p.row}));
    j["waypoints"] = std::move(wps);
    const PathCounts c = counts(path);
    j["counts"] = {{"waypoints", c.waypoints}, {"movements", c.movements}, {"turns", c.turns}};
    j["energy"] = energy(path, grid);
    return j;
}

inline Json mtm_solution_to_json(const MtmSolution& sol, const IrradianceGrid& grid) {
    Json j;
    j["feasible"] = true;
    j["turns"] = sol.counts.turns;
    j["movements"] = sol.counts.movements;
    j["waypoints"] = sol.counts.waypoints;
    j["energy"] = sol.energy;
    j["path"] = path_to_json(sol.path, grid);
    return j;
}

inline Json mec_solution_to_json(const MecSolution& sol, const IrradianceGrid& grid) {
    Json j;
    j["energy"] = sol.energy;
    j["weight_sum"] = sol.weight_sum;
    j["movements"] = sol.counts.movements;
    j["waypoints"] = sol.counts.waypoints;
    j["turns"] = sol.counts.turns;
    j["path"] = path_to_json(sol.path, grid);
    return j;
}

inline Json sweep_rows_to_json(const std::vector<SweepRow>& rows, bool with_timings) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["param"] = r.param;
        j["objective"] = r.objective;
        j["energy"] = r.energy;
        j["feasible"] = r.feasible;
        if (with_timings) j["time_ms"] = r.wall_time_ms;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline Json forecast_report_to_json(const ForecastReport& rep, bool with_timings = true) {
    Json j;
    j["k"] = rep.k;
    j["per_interval_budget"] = rep.per_interval_budget;
    j["fraction"] = rep.fraction;
    j["kind"] = to_string(rep.kind);
    j["chained"] = rep.chained;

    Json whole;
    whole["energy"] = rep.whole_day.energy;
    whole["movements"] = rep.whole_day.movements;
    if (with_timings) whole["wall_time_ms"] = rep.whole_day.wall_time_ms;
    j["whole_day"] = std::move(whole);

    Json ivs = Json::array();
    for (const auto& iv : rep.intervals) {
        Json e;
        e["start_row"] = iv.start_row;
        e["end_row"] = iv.end_row;
        e["start_col"] = iv.start_col;
        e["energy"] = iv.energy;
        e["movements"] = iv.movements;
        if (with_timings) e["wall_time_ms"] = iv.wall_time_ms;
        e["energy_95"] = iv.energy_95;
        e["movements_95"] = iv.movements_95;
        ivs.push_back(std::move(e));
    }
    j["intervals"] = std::move(ivs);

    Json agg;
    agg["total_energy"] = rep.aggregate.total_energy;
    agg["total_movements"] = rep.aggregate.total_movements;
    agg["total_energy_95"] = rep.aggregate.total_energy_95;
    agg["total_movements_95"] = rep.aggregate.total_movements_95;
    if (with_timings) agg["total_wall_time_ms"] = rep.aggregate.total_wall_time_ms;
    agg["reduction_vs_whole_day_pct"] = rep.aggregate.reduction_vs_whole_day_pct;
    agg["reduction_vs_intervals_pct"] = rep.aggregate.reduction_vs_intervals_pct;
    j["aggregate"] = std::move(agg);
    return j;
}

} // namespace suntrack
