#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"
#include "suntrack/path.hpp"

namespace suntrack {

/// Inputs of the minimum-rotation problem: keep every collected cell's weight
/// inside [u1, u2] while turning as little as possible.
struct MtmParams {
    double u1 = 0.0;
    double u2 = std::numeric_limits<double>::infinity();
    int start_col = 0;
    PathKind kind = PathKind::General;
};

struct MtmSolution {
    GridPath path;
    PathCounts counts;
    double energy = 0.0;
};

inline void validate_mtm_params(const IrradianceGrid& grid, const MtmParams& p) {
    validate_grid(grid);
    if (std::isnan(p.u1) || std::isnan(p.u2) || p.u1 > p.u2)
        throw ParamError("thresholds must satisfy u1 <= u2");
    if (p.start_col < 0 || p.start_col >= grid.n_cols)
        throw ParamError("start_col " + std::to_string(p.start_col) + " outside [0, " +
                         std::to_string(grid.n_cols) + ")");
}

namespace detail {

// Turn counts use an explicit unreachable marker; it orders after every real
// count, and plus_turn never does arithmetic on it.
inline constexpr int kUnreachableTurns = std::numeric_limits<int>::max();
inline constexpr bool turns_reachable(int t) { return t != kUnreachableTurns; }
inline constexpr int plus_turn(int t) { return turns_reachable(t) ? t + 1 : kUnreachableTurns; }

// How a DP state was entered; drives path reconstruction.
enum PredCode : std::uint8_t {
    kPredNone = 0,         // origin / base of a row-0 run / unreachable
    kPredContinue = 1,     // same state, previous cell
    kPredTurnPrimary = 2,  // turn from the first alternative state
    kPredTurnSecondary = 3 // turn from the second alternative state (left run)
};

enum class Arrival { Vertical, RightRun, LeftRun };

struct MtmTables {
    int n_cols = 0;
    int n_rows = 0;
    std::vector<std::uint8_t> pred_v, pred_rh, pred_lh; // n_cols * n_rows each
    std::uint8_t& at(std::vector<std::uint8_t>& v, int i, int j) {
        return v[static_cast<std::size_t>(j) * n_cols + i];
    }
};

// Expanded vertex walk from the chosen top-row state back to the origin.
inline GridPath reconstruct_mtm(const MtmTables& tb, int start_col, PathKind kind, int col,
                                Arrival state) {
    auto pv = [&](int i, int j) {
        return tb.pred_v[static_cast<std::size_t>(j) * tb.n_cols + i];
    };
    auto prh = [&](int i, int j) {
        return tb.pred_rh[static_cast<std::size_t>(j) * tb.n_cols + i];
    };
    auto plh = [&](int i, int j) {
        return tb.pred_lh[static_cast<std::size_t>(j) * tb.n_cols + i];
    };

    std::vector<Waypoint> walk;
    int i = col;
    int j = tb.n_rows - 1;
    Arrival s = state;
    bool done = false;
    while (!done) {
        walk.push_back({i, j});
        switch (s) {
            case Arrival::Vertical:
                switch (pv(i, j)) {
                    case kPredContinue: --j; break;
                    case kPredTurnPrimary:
                        s = Arrival::RightRun;
                        if (j > 0) --j; // at row 0 the turn happens in place
                        break;
                    case kPredTurnSecondary:
                        s = Arrival::LeftRun;
                        if (j > 0) --j;
                        break;
                    default: done = true; break; // origin
                }
                break;
            case Arrival::RightRun:
                switch (prh(i, j)) {
                    case kPredContinue: --i; break;
                    case kPredTurnPrimary: s = Arrival::Vertical; --i; break;
                    default: // row-0 run back to the start column
                        while (i > start_col) walk.push_back({--i, j});
                        done = true;
                        break;
                }
                break;
            case Arrival::LeftRun:
                switch (plh(i, j)) {
                    case kPredContinue: ++i; break;
                    case kPredTurnPrimary: s = Arrival::Vertical; ++i; break;
                    default:
                        while (i < start_col) walk.push_back({++i, j});
                        done = true;
                        break;
                }
                break;
        }
    }
    std::reverse(walk.begin(), walk.end());
    return compress_walk(walk, kind, start_col);
}

inline std::optional<MtmSolution> solve_mtm_impl(const IrradianceGrid& grid, const MtmParams& p) {
    const int n_cols = grid.n_cols;
    const int n_rows = grid.n_rows;
    const int start = p.start_col;
    const bool no_left = p.kind == PathKind::NoLeft;
    const int lo_col = no_left ? start : 0;
    auto in_band = [&](double w) { return w >= p.u1 && w <= p.u2; };

    MtmTables tb;
    tb.n_cols = n_cols;
    tb.n_rows = n_rows;
    const std::size_t cells = static_cast<std::size_t>(n_cols) * n_rows;
    tb.pred_v.assign(cells, kPredNone);
    tb.pred_rh.assign(cells, kPredNone);
    if (!no_left) tb.pred_lh.assign(cells, kPredNone);

    std::vector<int> v_prev(n_cols, kUnreachableTurns), v_cur(n_cols, kUnreachableTurns);
    std::vector<int> rh_prev(n_cols, kUnreachableTurns), rh_cur(n_cols, kUnreachableTurns);
    std::vector<int> lh_prev, lh_cur;
    if (!no_left) {
        lh_prev.assign(n_cols, kUnreachableTurns);
        lh_cur.assign(n_cols, kUnreachableTurns);
    }

    // Row 0: a run may sweep away from the start column at no turn cost;
    // committing to ascend from (i, 0) costs one turn unless i is the start.
    for (int i = start; i < n_cols; ++i) rh_prev[i] = 0;
    if (!no_left)
        for (int i = 0; i <= start; ++i) lh_prev[i] = 0;
    for (int i = lo_col; i < n_cols; ++i) {
        if (!in_band(grid.weight(i, 0))) continue;
        if (i == start) {
            v_prev[i] = 0;
        } else if (i > start) {
            v_prev[i] = 1;
            tb.at(tb.pred_v, i, 0) = kPredTurnPrimary;
        } else {
            v_prev[i] = 1;
            tb.at(tb.pred_v, i, 0) = kPredTurnSecondary;
        }
    }

    for (int j = 1; j < n_rows; ++j) {
        bool any_vertical = false;
        for (int i = lo_col; i < n_cols; ++i) {
            v_cur[i] = kUnreachableTurns;
            if (!in_band(grid.weight(i, j - 1))) continue;
            int best = v_prev[i];
            std::uint8_t code = kPredContinue;
            const int via_right = plus_turn(rh_prev[i]);
            if (via_right < best) {
                best = via_right;
                code = kPredTurnPrimary;
            }
            if (!no_left) {
                const int via_left = plus_turn(lh_prev[i]);
                if (via_left < best) {
                    best = via_left;
                    code = kPredTurnSecondary;
                }
            }
            v_cur[i] = best;
            if (turns_reachable(best)) {
                tb.at(tb.pred_v, i, j) = code;
                any_vertical = true;
            }
        }
        if (!any_vertical) return std::nullopt; // no path can cross this row

        // Right runs sweep ascending: a run can only begin at a column that
        // was entered vertically, so everything left of the first such column
        // stays unreachable.
        int carry = kUnreachableTurns;
        std::uint8_t carry_code = kPredNone;
        for (int i = lo_col; i < n_cols; ++i) {
            rh_cur[i] = carry;
            if (turns_reachable(carry)) tb.at(tb.pred_rh, i, j) = carry_code;
            const int from_vertical = plus_turn(v_cur[i]);
            if (from_vertical < carry) {
                carry = from_vertical;
                carry_code = kPredTurnPrimary;
            } else if (turns_reachable(carry) && carry_code == kPredTurnPrimary) {
                carry_code = kPredContinue;
            }
        }

        if (!no_left) {
            carry = kUnreachableTurns;
            carry_code = kPredNone;
            for (int i = n_cols - 1; i >= 0; --i) {
                lh_cur[i] = carry;
                if (turns_reachable(carry)) tb.at(tb.pred_lh, i, j) = carry_code;
                const int from_vertical = plus_turn(v_cur[i]);
                if (from_vertical < carry) {
                    carry = from_vertical;
                    carry_code = kPredTurnPrimary;
                } else if (turns_reachable(carry) && carry_code == kPredTurnPrimary) {
                    carry_code = kPredContinue;
                }
            }
        }

        v_prev.swap(v_cur);
        rh_prev.swap(rh_cur);
        if (!no_left) lh_prev.swap(lh_cur);
    }

    // Best over both arrival shapes on the top row; vertical arrivals first,
    // then smaller columns, keep strictly better candidates only.
    int best = kUnreachableTurns;
    int best_col = -1;
    Arrival best_state = Arrival::Vertical;
    auto consider = [&](int value, int col, Arrival st) {
        if (value < best) {
            best = value;
            best_col = col;
            best_state = st;
        }
    };
    for (int i = lo_col; i < n_cols; ++i) consider(v_prev[i], i, Arrival::Vertical);
    for (int i = lo_col; i < n_cols; ++i) consider(rh_prev[i], i, Arrival::RightRun);
    if (!no_left)
        for (int i = 0; i < n_cols; ++i) consider(lh_prev[i], i, Arrival::LeftRun);
    if (!turns_reachable(best)) return std::nullopt;

    MtmSolution sol;
    sol.path = reconstruct_mtm(tb, start, p.kind, best_col, best_state);
    sol.counts = counts(sol.path);
    sol.energy = energy(sol.path, grid);
    return sol;
}

} // namespace detail

/// Minimum-turn no-left path through the [u1, u2] band, or nullopt when no
/// such path exists. Linear time in the number of grid vertices.
inline std::optional<MtmSolution> solve_mtm_nl(const IrradianceGrid& grid, const MtmParams& p) {
    validate_mtm_params(grid, p);
    if (p.kind != PathKind::NoLeft) throw ParamError("solve_mtm_nl requires kind = NoLeft");
    return detail::solve_mtm_impl(grid, p);
}

/// Minimum-turn general path (left turns allowed) through the band, or
/// nullopt when infeasible. Linear time in the number of grid vertices.
inline std::optional<MtmSolution> solve_mtm(const IrradianceGrid& grid, const MtmParams& p) {
    validate_mtm_params(grid, p);
    if (p.kind != PathKind::General) throw ParamError("solve_mtm requires kind = General");
    return detail::solve_mtm_impl(grid, p);
}

/// Analytic feasibility test. A general path exists iff every crossed row has
/// an in-band column; a no-left path additionally needs a non-decreasing
/// column selection starting at or right of the start column.
inline bool feasibility_check(const IrradianceGrid& grid, const MtmParams& p) {
    validate_mtm_params(grid, p);
    auto in_band = [&](double w) { return w >= p.u1 && w <= p.u2; };
    if (p.kind == PathKind::General) {
        for (int j = 0; j + 1 < grid.n_rows; ++j) {
            bool any = false;
            for (int i = 0; i < grid.n_cols && !any; ++i) any = in_band(grid.weight(i, j));
            if (!any) return false;
        }
        return true;
    }
    int prev = p.start_col;
    for (int j = 0; j + 1 < grid.n_rows; ++j) {
        int chosen = -1;
        for (int i = prev; i < grid.n_cols; ++i) {
            if (in_band(grid.weight(i, j))) {
                chosen = i;
                break;
            }
        }
        if (chosen < 0) return false;
        prev = chosen;
    }
    return true;
}

} // namespace suntrack
