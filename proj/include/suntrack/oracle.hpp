#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"
#include "suntrack/path.hpp"

namespace suntrack {

/// Hard caps keeping exhaustive enumeration tractable. The enumerator is a
/// certification tool for tiny instances, never a production code path.
struct EnumLimits {
    int max_cols = 6;
    int max_rows = 6;
    int max_movements = 6;
};

/// Aggregates of one enumerated path, enough to evaluate both problems
/// without materializing the waypoint list.
struct PathStats {
    int waypoints = 0;
    int movements = 0;
    int turns = 0;
    double weight_sum = 0.0;
    double min_weight = std::numeric_limits<double>::infinity();
    double max_weight = -std::numeric_limits<double>::infinity();
};

namespace detail {

inline void check_enum_limits(const IrradianceGrid& grid, const EnumLimits& lim) {
    if (lim.max_cols < 2 || lim.max_cols > 6 || lim.max_rows < 2 || lim.max_rows > 6 ||
        lim.max_movements < 0 || lim.max_movements > 6)
        throw SizeError("enumeration limits must satisfy 2..6 columns/rows, 0..6 movements");
    if (grid.n_cols > lim.max_cols || grid.n_rows > lim.max_rows)
        throw SizeError("grid " + std::to_string(grid.n_cols) + "x" +
                        std::to_string(grid.n_rows) + " exceeds the enumeration limits");
}

class PathEnumerator {
public:
    using Visitor = std::function<void(const std::vector<Waypoint>&, const PathStats&)>;

    PathEnumerator(const IrradianceGrid& grid, PathKind kind, const EnumLimits& lim,
                   int start_col, Visitor visit)
        : grid_(grid), kind_(kind), lim_(lim), visit_(std::move(visit)) {
        check_enum_limits(grid, lim);
        if (start_col < 0 || start_col >= grid.n_cols)
            throw ParamError("start_col outside the grid");
        stack_.push_back({start_col, 0});
        PathStats stats;
        extend(start_col, 0, Axis::None, 0, stats);
    }

private:
    enum class Axis { None, Horizontal, Vertical };

    void emit(int movements, PathStats stats) {
        stats.waypoints = static_cast<int>(stack_.size());
        stats.movements = movements;
        stats.turns = stats.waypoints - 2;
        visit_(stack_, stats);
    }

    void horizontal_targets(int col, const std::function<void(int)>& fn) const {
        if (kind_ == PathKind::NoLeft) {
            for (int c = col + 1; c < grid_.n_cols; ++c) fn(c);
        } else {
            for (int c = 0; c < grid_.n_cols; ++c)
                if (c != col) fn(c);
        }
    }

    void extend(int col, int row, Axis last, int movements, const PathStats& stats) {
        if (row == grid_.top_row()) {
            emit(movements, stats);
            // a final rotation inside the top row is structurally allowed
            if (last != Axis::Horizontal && movements < lim_.max_movements) {
                horizontal_targets(col, [&](int c) {
                    stack_.push_back({c, row});
                    emit(movements + 1, stats);
                    stack_.pop_back();
                });
            }
            return;
        }
        if (last != Axis::Vertical) {
            PathStats up = stats;
            for (int r = row + 1; r <= grid_.top_row(); ++r) {
                const double w = grid_.weight(col, r - 1);
                up.weight_sum += w;
                up.min_weight = std::min(up.min_weight, w);
                up.max_weight = std::max(up.max_weight, w);
                stack_.push_back({col, r});
                extend(col, r, Axis::Vertical, movements, up);
                stack_.pop_back();
            }
        }
        if (last != Axis::Horizontal && movements < lim_.max_movements) {
            horizontal_targets(col, [&](int c) {
                stack_.push_back({c, row});
                extend(c, row, Axis::Horizontal, movements + 1, stats);
                stack_.pop_back();
            });
        }
    }

    const IrradianceGrid& grid_;
    PathKind kind_;
    EnumLimits lim_;
    Visitor visit_;
    std::vector<Waypoint> stack_;
};

} // namespace detail

/// Calls `visit` once per valid path of the given kind from (start_col, 0) to
/// the top row with at most `limits.max_movements` rotations. Paths are turn
/// point sequences, so no two visits see the same path.
inline void for_each_path(const IrradianceGrid& grid, PathKind kind, const EnumLimits& limits,
                          int start_col,
                          const std::function<void(const std::vector<Waypoint>&, const PathStats&)>&
                              visit) {
    validate_grid(grid);
    detail::PathEnumerator(grid, kind, limits, start_col, visit);
}

/// Materializes every enumerated path.
inline std::vector<GridPath> enumerate_paths(const IrradianceGrid& grid, PathKind kind,
                                             const EnumLimits& limits, int start_col = 0) {
    std::vector<GridPath> out;
    for_each_path(grid, kind, limits, start_col,
                  [&](const std::vector<Waypoint>& wp, const PathStats&) {
                      out.push_back(GridPath{wp, kind, start_col});
                  });
    return out;
}

/// Ground-truth minimum turn count over all paths whose collected weights all
/// lie in [u1, u2]; nullopt when no such path exists.
inline std::optional<int> oracle_mtm(const IrradianceGrid& grid, double u1, double u2,
                                     PathKind kind, int start_col = 0) {
    validate_grid(grid);
    EnumLimits lim;
    // One rotation per crossed row suffices for any band-feasible optimum.
    lim.max_movements = std::min(6, grid.n_rows - 1);
    std::optional<int> best;
    for_each_path(grid, kind, lim, start_col,
                  [&](const std::vector<Waypoint>&, const PathStats& s) {
                      if (s.min_weight < u1 || s.max_weight > u2) return;
                      if (!best || s.turns < *best) best = s.turns;
                  });
    return best;
}

/// Ground-truth maximum collected weight over all paths with at most
/// `moves_budget` rotations.
inline double oracle_mec(const IrradianceGrid& grid, int moves_budget, PathKind kind,
                         int start_col = 0) {
    validate_grid(grid);
    if (moves_budget < 0) throw ParamError("moves budget must be non-negative");
    EnumLimits lim;
    // Rotations beyond one per crossed row never add weight.
    lim.max_movements = std::min(moves_budget, grid.n_rows - 1);
    double best = -std::numeric_limits<double>::infinity();
    for_each_path(grid, kind, lim, start_col,
                  [&](const std::vector<Waypoint>&, const PathStats& s) {
                      if (s.weight_sum > best) best = s.weight_sum;
                  });
    return best;
}

} // namespace suntrack
