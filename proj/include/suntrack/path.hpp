#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "suntrack/grid.hpp"

namespace suntrack {

/// Whether the tracker may rotate backwards (leftward columns) or not.
enum class PathKind { General, NoLeft };

inline const char* to_string(PathKind k) {
    return k == PathKind::General ? "general" : "no_left";
}

struct Waypoint {
    int col = 0;
    int row = 0;
    friend auto operator<=>(const Waypoint&, const Waypoint&) = default;
};

/// A collector path stored as its turn points.
///
/// Consecutive waypoints span axis-aligned segments of alternating axis; rows
/// never decrease along the path. The tracker is static (collecting) on
/// vertical segments and rotating on horizontal ones. The first waypoint is
/// (start_col, 0) and the last waypoint sits on the top row.
struct GridPath {
    std::vector<Waypoint> waypoints;
    PathKind kind = PathKind::General;
    int start_col = 0;
};

/// Size measures of a path. movements counts horizontal segments (rotation
/// events); turns counts interior waypoints where the direction changes.
struct PathCounts {
    int waypoints = 0;
    int movements = 0;
    int turns = 0;
};

/// Outcome of structural validation; code names the first violated clause.
struct Validation {
    enum class Code {
        Valid,
        TooShort,          ///< fewer than two waypoints
        BadOrigin,         ///< first waypoint is not (start_col, 0)
        OutOfBounds,       ///< waypoint outside the grid
        DuplicateWaypoint, ///< two consecutive waypoints equal
        DiagonalSegment,   ///< both coordinates change across one segment
        DecreasingRow,     ///< row monotonicity violated
        RedundantWaypoint, ///< consecutive segments on the same axis
        LeftMoveForbidden, ///< leftward segment in a no-left path
        BadTerminalRow     ///< last waypoint not on the top row
    };
    Code code = Code::Valid;
    int waypoint_index = -1;
    std::string message;

    bool ok() const { return code == Code::Valid; }
};

inline const char* to_string(Validation::Code c) {
    switch (c) {
        case Validation::Code::Valid: return "valid";
        case Validation::Code::TooShort: return "too_short";
        case Validation::Code::BadOrigin: return "bad_origin";
        case Validation::Code::OutOfBounds: return "out_of_bounds";
        case Validation::Code::DuplicateWaypoint: return "duplicate_waypoint";
        case Validation::Code::DiagonalSegment: return "diagonal_segment";
        case Validation::Code::DecreasingRow: return "decreasing_row";
        case Validation::Code::RedundantWaypoint: return "redundant_waypoint";
        case Validation::Code::LeftMoveForbidden: return "left_move_forbidden";
        case Validation::Code::BadTerminalRow: return "bad_terminal_row";
    }
    return "unknown";
}

/// Checks every structural clause of a path against the grid bounds and
/// reports the first violation in walk order.
inline Validation validate(const GridPath& path, const IrradianceGrid& grid) {
    auto fail = [](Validation::Code code, int index, std::string msg) {
        return Validation{code, index, std::move(msg)};
    };
    const auto& wp = path.waypoints;
    if (wp.size() < 2)
        return fail(Validation::Code::TooShort, 0, "a path needs at least two waypoints");
    if (wp.front().col != path.start_col || wp.front().row != 0)
        return fail(Validation::Code::BadOrigin, 0,
                    "path must start at (" + std::to_string(path.start_col) + ", 0)");

    auto in_bounds = [&](const Waypoint& p) {
        return p.col >= 0 && p.col < grid.n_cols && p.row >= 0 && p.row < grid.n_rows;
    };
    if (!in_bounds(wp[0]))
        return fail(Validation::Code::OutOfBounds, 0, "waypoint 0 is outside the grid");

    bool prev_horizontal = false;
    for (std::size_t t = 1; t < wp.size(); ++t) {
        const int idx = static_cast<int>(t);
        if (!in_bounds(wp[t]))
            return fail(Validation::Code::OutOfBounds, idx,
                        "waypoint " + std::to_string(idx) + " is outside the grid");
        const int dc = wp[t].col - wp[t - 1].col;
        const int dr = wp[t].row - wp[t - 1].row;
        if (dc == 0 && dr == 0)
            return fail(Validation::Code::DuplicateWaypoint, idx,
                        "waypoints " + std::to_string(idx - 1) + " and " + std::to_string(idx) +
                            " coincide");
        if (dc != 0 && dr != 0)
            return fail(Validation::Code::DiagonalSegment, idx,
                        "segment into waypoint " + std::to_string(idx) + " is not axis-aligned");
        if (dr < 0)
            return fail(Validation::Code::DecreasingRow, idx,
                        "row decreases at waypoint " + std::to_string(idx));
        const bool horizontal = dc != 0;
        if (t > 1 && horizontal == prev_horizontal)
            return fail(Validation::Code::RedundantWaypoint, idx - 1,
                        "waypoint " + std::to_string(idx - 1) +
                            " does not change direction");
        if (path.kind == PathKind::NoLeft && dc < 0)
            return fail(Validation::Code::LeftMoveForbidden, idx,
                        "leftward segment into waypoint " + std::to_string(idx));
        prev_horizontal = horizontal;
    }
    if (wp.back().row != grid.top_row())
        return fail(Validation::Code::BadTerminalRow, static_cast<int>(wp.size()) - 1,
                    "path must end on row " + std::to_string(grid.top_row()));
    return {};
}

/// Vertices on vertical segments, each segment's upper endpoint excluded.
/// These are the cells where the tracker is static and collects energy.
inline std::vector<Waypoint> vertical_points(const GridPath& path) {
    std::vector<Waypoint> out;
    const auto& wp = path.waypoints;
    for (std::size_t t = 1; t < wp.size(); ++t) {
        if (wp[t].col != wp[t - 1].col) continue;
        for (int r = wp[t - 1].row; r < wp[t].row; ++r) out.push_back({wp[t].col, r});
    }
    return out;
}

/// Collected energy: eps_deg times the sum of vertical-point weights, summed
/// in walk order.
inline double energy(const GridPath& path, const IrradianceGrid& grid) {
    double sum = 0.0;
    const auto& wp = path.waypoints;
    for (std::size_t t = 1; t < wp.size(); ++t) {
        if (wp[t].col != wp[t - 1].col) continue;
        for (int r = wp[t - 1].row; r < wp[t].row; ++r) sum += grid.weight(wp[t].col, r);
    }
    return grid.eps_deg * sum;
}

inline PathCounts counts(const GridPath& path) {
    PathCounts c;
    const auto& wp = path.waypoints;
    c.waypoints = static_cast<int>(wp.size());
    bool prev_horizontal = false;
    for (std::size_t t = 1; t < wp.size(); ++t) {
        const bool horizontal = wp[t].col != wp[t - 1].col;
        if (horizontal) ++c.movements;
        if (t > 1 && horizontal != prev_horizontal) ++c.turns;
        prev_horizontal = horizontal;
    }
    return c;
}

namespace detail {

/// Collapses an expanded unit-step vertex walk into its turn points.
/// Consecutive duplicates are dropped first; interior vertices are kept only
/// where the step direction changes.
inline GridPath compress_walk(const std::vector<Waypoint>& walk, PathKind kind, int start_col) {
    std::vector<Waypoint> pts;
    pts.reserve(walk.size());
    for (const auto& p : walk)
        if (pts.empty() || !(pts.back() == p)) pts.push_back(p);

    GridPath path;
    path.kind = kind;
    path.start_col = start_col;
    if (pts.empty()) return path;
    path.waypoints.push_back(pts.front());
    for (std::size_t t = 1; t + 1 < pts.size(); ++t) {
        const int dc0 = pts[t].col - pts[t - 1].col;
        const int dr0 = pts[t].row - pts[t - 1].row;
        const int dc1 = pts[t + 1].col - pts[t].col;
        const int dr1 = pts[t + 1].row - pts[t].row;
        const bool same_axis = (dc0 != 0) == (dc1 != 0);
        const bool same_sign = (dc0 < 0) == (dc1 < 0) && (dr0 < 0) == (dr1 < 0);
        if (!(same_axis && same_sign)) path.waypoints.push_back(pts[t]);
    }
    if (pts.size() > 1) path.waypoints.push_back(pts.back());
    return path;
}

} // namespace detail

/// Perfect-tracking baseline: a path that crosses each row boundary at that
/// row's heaviest column (ties to the smallest index), starting from column 0.
inline GridPath reference_tracking_path(const IrradianceGrid& grid) {
    validate_grid(grid);
    std::vector<Waypoint> walk;
    int cur = 0;
    walk.push_back({0, 0});
    for (int j = 0; j + 1 < grid.n_rows; ++j) {
        int best = 0;
        for (int i = 1; i < grid.n_cols; ++i)
            if (grid.weight(i, j) > grid.weight(best, j)) best = i;
        const int step = best > cur ? 1 : -1;
        while (cur != best) {
            cur += step;
            walk.push_back({cur, j});
        }
        walk.push_back({cur, j + 1});
    }
    return detail::compress_walk(walk, PathKind::General, 0);
}

} // namespace suntrack
