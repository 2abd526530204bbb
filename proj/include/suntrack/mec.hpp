#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"
#include "suntrack/mtm.hpp"
#include "suntrack/path.hpp"

namespace suntrack {

/// How the budget of a maximum-energy solve is expressed: as a count of
/// rotation events (horizontal segments) or as a cap on waypoints.
enum class BudgetKind { Movements, Waypoints };

/// Inputs of the maximum-energy problem: collect as much weight as possible
/// without exceeding the budget.
struct MecParams {
    int moves_budget = 0; ///< rotations allowed; a waypoint cap under BudgetKind::Waypoints
    BudgetKind budget_kind = BudgetKind::Movements;
    int start_col = 0;
    PathKind kind = PathKind::General;
};

struct MecSolution {
    GridPath path;
    PathCounts counts;
    double energy = 0.0;     ///< eps_deg * weight_sum
    double weight_sum = 0.0; ///< DP objective: sum of vertical-point weights
};

inline void validate_mec_params(const IrradianceGrid& grid, const MecParams& p) {
    validate_grid(grid);
    if (p.budget_kind == BudgetKind::Movements && p.moves_budget < 0)
        throw ParamError("moves budget must be non-negative");
    if (p.budget_kind == BudgetKind::Waypoints && p.moves_budget < 2)
        throw ParamError("waypoint budget must be at least 2");
    if (p.start_col < 0 || p.start_col >= grid.n_cols)
        throw ParamError("start_col " + std::to_string(p.start_col) + " outside [0, " +
                         std::to_string(grid.n_cols) + ")");
}

namespace detail {

// IEEE -inf is the unreachable marker: max(-inf, x) = x and -inf + w stays
// unreachable, so the tables never mix marker and real values.
inline constexpr double kUnreachableEnergy = -std::numeric_limits<double>::infinity();

// Turn caps per arrival shape. A path arriving vertically with k turns uses
// ceil(k/2) rotations; arriving horizontally it uses floor(k/2) + 1. Under a
// waypoint cap both shapes satisfy waypoints = turns + 2. No path on the grid
// can make more than 2 * (n_rows - 1) turns, so larger budgets are clamped
// without affecting the optimum.
struct TurnCaps {
    int vertical = 0;   // largest k admissible for a vertical arrival
    int horizontal = 0; // largest k admissible for a horizontal arrival (may be -1)
    int compute_h = 0;  // largest k the run tables must be filled for
};

inline TurnCaps turn_caps(const MecParams& p, int n_rows) {
    const int structural = 2 * (n_rows - 1);
    TurnCaps c;
    if (p.budget_kind == BudgetKind::Movements) {
        c.vertical = std::min(2 * p.moves_budget, structural);
        c.horizontal = std::min(2 * p.moves_budget - 1, structural);
    } else {
        c.vertical = std::min(p.moves_budget - 2, structural);
        c.horizontal = c.vertical;
    }
    c.compute_h = std::max(c.horizontal, c.vertical - 1);
    return c;
}

// Per-thread workspace reused across solves. Table sizes repeat across the
// solves of a sweep or a bisection, so keeping the buffers warm avoids
// refaulting tens of megabytes per call; memory stays at the high-water mark
// of the largest instance solved on the thread.
struct MecScratch {
    std::vector<std::uint8_t> pred_v, pred_rh, pred_lh;
    std::vector<double> v_prev, v_cur, rh_prev, rh_cur, lh_prev, lh_cur;
};

inline MecScratch& mec_scratch() {
    thread_local MecScratch scratch;
    return scratch;
}

struct MecTables {
    int n_cols = 0;
    int kdim = 0;
    std::vector<std::uint8_t>* pred_v = nullptr;
    std::vector<std::uint8_t>* pred_rh = nullptr;
    std::vector<std::uint8_t>* pred_lh = nullptr;
    std::uint8_t& at(std::vector<std::uint8_t>& v, int i, int j, int k) {
        return v[(static_cast<std::size_t>(j) * kdim + k) * n_cols + i];
    }
    std::uint8_t get(const std::vector<std::uint8_t>& v, int i, int j, int k) const {
        return v[(static_cast<std::size_t>(j) * kdim + k) * n_cols + i];
    }
};

inline GridPath reconstruct_mec(const MecTables& tb, int start_col, PathKind kind, int n_rows,
                                int col, int turn_count, Arrival state) {
    std::vector<Waypoint> walk;
    int i = col;
    int j = n_rows - 1;
    int k = turn_count;
    Arrival s = state;
    bool done = false;
    while (!done) {
        walk.push_back({i, j});
        switch (s) {
            case Arrival::Vertical:
                switch (tb.get(*tb.pred_v, i, j, k)) {
                    case kPredContinue: --j; break;
                    case kPredTurnPrimary: s = Arrival::RightRun; --j; --k; break;
                    case kPredTurnSecondary: s = Arrival::LeftRun; --j; --k; break;
                    default: done = true; break; // origin
                }
                break;
            case Arrival::RightRun:
                switch (tb.get(*tb.pred_rh, i, j, k)) {
                    case kPredContinue: --i; break;
                    case kPredTurnPrimary: s = Arrival::Vertical; --i; --k; break;
                    default: // row-0 run back to the start column
                        while (i > start_col) walk.push_back({--i, j});
                        done = true;
                        break;
                }
                break;
            case Arrival::LeftRun:
                switch (tb.get(*tb.pred_lh, i, j, k)) {
                    case kPredContinue: ++i; break;
                    case kPredTurnPrimary: s = Arrival::Vertical; ++i; --k; break;
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

inline MecSolution solve_mec_impl(const IrradianceGrid& grid, const MecParams& p) {
    const int n_cols = grid.n_cols;
    const int n_rows = grid.n_rows;
    const int start = p.start_col;
    const bool no_left = p.kind == PathKind::NoLeft;
    const int lo_col = no_left ? start : 0;
    const TurnCaps caps = turn_caps(p, n_rows);
    const int kdim = caps.vertical + 1;

    MecScratch& scratch = mec_scratch();
    MecTables tb;
    tb.n_cols = n_cols;
    tb.kdim = kdim;
    tb.pred_v = &scratch.pred_v;
    tb.pred_rh = &scratch.pred_rh;
    tb.pred_lh = &scratch.pred_lh;
    const std::size_t cells = static_cast<std::size_t>(n_rows) * kdim * n_cols;
    scratch.pred_v.assign(cells, kPredNone);
    if (caps.compute_h >= 0) {
        scratch.pred_rh.assign(cells, kPredNone);
        if (!no_left) scratch.pred_lh.assign(cells, kPredNone);
    }

    const std::size_t slab = static_cast<std::size_t>(kdim) * n_cols;
    std::vector<double>&v_prev = scratch.v_prev, &v_cur = scratch.v_cur;
    std::vector<double>&rh_prev = scratch.rh_prev, &rh_cur = scratch.rh_cur;
    std::vector<double>&lh_prev = scratch.lh_prev, &lh_cur = scratch.lh_cur;
    v_prev.assign(slab, kUnreachableEnergy);
    v_cur.assign(slab, kUnreachableEnergy);
    if (caps.compute_h >= 0) {
        rh_prev.assign(slab, kUnreachableEnergy);
        rh_cur.assign(slab, kUnreachableEnergy);
        if (!no_left) {
            lh_prev.assign(slab, kUnreachableEnergy);
            lh_cur.assign(slab, kUnreachableEnergy);
        }
    }
    auto idx = [n_cols](int k, int i) { return static_cast<std::size_t>(k) * n_cols + i; };

    // Row 0. Runs away from the start column are free of turns; only the
    // start column itself can already be in a vertical state.
    v_prev[idx(0, start)] = 0.0;
    if (caps.compute_h >= 0) {
        for (int i = start; i < n_cols; ++i) rh_prev[idx(0, i)] = 0.0;
        if (!no_left)
            for (int i = 0; i <= start; ++i) lh_prev[idx(0, i)] = 0.0;
    }
    int kmax_prev_v = 0;
    int kmax_prev_h = caps.compute_h >= 0 ? 0 : -1;

    for (int j = 1; j < n_rows; ++j) {
        // No path entering row j can have made more than 2j turns.
        const int kmax_v = std::min(caps.vertical, 2 * j);
        const int kmax_h = std::min(caps.compute_h, 2 * j);

        for (int k = 0; k <= kmax_v; ++k) {
            const bool has_prev_v = k <= kmax_prev_v;
            const bool has_prev_h = k >= 1 && k - 1 <= kmax_prev_h;
            for (int i = lo_col; i < n_cols; ++i) {
                double best = has_prev_v ? v_prev[idx(k, i)] : kUnreachableEnergy;
                std::uint8_t code = kPredContinue;
                if (has_prev_h) {
                    const double via_right = rh_prev[idx(k - 1, i)];
                    if (via_right > best) {
                        best = via_right;
                        code = kPredTurnPrimary;
                    }
                    if (!no_left) {
                        const double via_left = lh_prev[idx(k - 1, i)];
                        if (via_left > best) {
                            best = via_left;
                            code = kPredTurnSecondary;
                        }
                    }
                }
                if (best == kUnreachableEnergy) {
                    v_cur[idx(k, i)] = kUnreachableEnergy;
                } else {
                    v_cur[idx(k, i)] = best + grid.weight(i, j - 1);
                    tb.at(*tb.pred_v, i, j, k) = code;
                }
            }
        }

        for (int k = 0; k <= kmax_h; ++k) {
            double carry = kUnreachableEnergy;
            std::uint8_t carry_code = kPredNone;
            for (int i = lo_col; i < n_cols; ++i) {
                rh_cur[idx(k, i)] = carry;
                if (carry != kUnreachableEnergy) tb.at(*tb.pred_rh, i, j, k) = carry_code;
                const double from_vertical =
                    (k >= 1 && k - 1 <= kmax_v) ? v_cur[idx(k - 1, i)] : kUnreachableEnergy;
                if (from_vertical > carry) {
                    carry = from_vertical;
                    carry_code = kPredTurnPrimary;
                } else if (carry != kUnreachableEnergy && carry_code == kPredTurnPrimary) {
                    carry_code = kPredContinue;
                }
            }
            if (!no_left) {
                carry = kUnreachableEnergy;
                carry_code = kPredNone;
                for (int i = n_cols - 1; i >= lo_col; --i) {
                    lh_cur[idx(k, i)] = carry;
                    if (carry != kUnreachableEnergy) tb.at(*tb.pred_lh, i, j, k) = carry_code;
                    const double from_vertical =
                        (k >= 1 && k - 1 <= kmax_v) ? v_cur[idx(k - 1, i)] : kUnreachableEnergy;
                    if (from_vertical > carry) {
                        carry = from_vertical;
                        carry_code = kPredTurnPrimary;
                    } else if (carry != kUnreachableEnergy && carry_code == kPredTurnPrimary) {
                        carry_code = kPredContinue;
                    }
                }
            }
        }

        v_prev.swap(v_cur);
        if (caps.compute_h >= 0) {
            rh_prev.swap(rh_cur);
            if (!no_left) lh_prev.swap(lh_cur);
        }
        kmax_prev_v = kmax_v;
        kmax_prev_h = kmax_h;
    }

    // Highest value over the top row; ties resolved toward fewer turns, then
    // vertical arrivals, then smaller columns.
    const int top = n_rows - 1;
    double best = kUnreachableEnergy;
    int best_col = start, best_k = 0;
    Arrival best_state = Arrival::Vertical;
    auto consider = [&](double value, int k, Arrival st, int i) {
        if (value > best) {
            best = value;
            best_k = k;
            best_state = st;
            best_col = i;
        }
    };
    for (int k = 0; k <= std::min(caps.vertical, 2 * top); ++k)
        for (int i = lo_col; i < n_cols; ++i) consider(v_prev[idx(k, i)], k, Arrival::Vertical, i);
    for (int k = 0; k <= std::min({caps.horizontal, kmax_prev_h, 2 * top}); ++k) {
        for (int i = lo_col; i < n_cols; ++i) consider(rh_prev[idx(k, i)], k, Arrival::RightRun, i);
        if (!no_left)
            for (int i = lo_col; i < n_cols; ++i)
                consider(lh_prev[idx(k, i)], k, Arrival::LeftRun, i);
    }
    if (best == kUnreachableEnergy)
        throw Error("internal: no terminal state found for a feasible instance");

    MecSolution sol;
    sol.path = reconstruct_mec(tb, start, p.kind, n_rows, best_col, best_k, best_state);
    sol.counts = counts(sol.path);
    sol.weight_sum = best;
    sol.energy = grid.eps_deg * best;
    if (p.budget_kind == BudgetKind::Movements && sol.counts.movements > p.moves_budget)
        throw Error("internal: reconstructed path exceeds the movement budget");
    if (p.budget_kind == BudgetKind::Waypoints && sol.counts.waypoints > p.moves_budget)
        throw Error("internal: reconstructed path exceeds the waypoint budget");
    return sol;
}

} // namespace detail

/// Maximum-weight no-left path within the budget. Every grid admits at least
/// the zero-move straight ascent, so a solution always exists.
inline MecSolution solve_mec_nl(const IrradianceGrid& grid, const MecParams& p) {
    validate_mec_params(grid, p);
    if (p.kind != PathKind::NoLeft) throw ParamError("solve_mec_nl requires kind = NoLeft");
    return detail::solve_mec_impl(grid, p);
}

/// Maximum-weight general path within the budget.
inline MecSolution solve_mec(const IrradianceGrid& grid, const MecParams& p) {
    validate_mec_params(grid, p);
    if (p.kind != PathKind::General) throw ParamError("solve_mec requires kind = General");
    return detail::solve_mec_impl(grid, p);
}

inline MecSolution solve_mec_any(const IrradianceGrid& grid, const MecParams& p) {
    return p.kind == PathKind::NoLeft ? solve_mec_nl(grid, p) : solve_mec(grid, p);
}

struct FractionSearchResult {
    int moves = 0;
    MecSolution solution;
};

/// Smallest movement budget whose optimum reaches `fraction` of the optimum at
/// `ref_budget`, found by bisection (optimal energy is non-decreasing in the
/// budget), together with the witnessing solution.
inline FractionSearchResult min_moves_for_fraction(const IrradianceGrid& grid, PathKind kind,
                                                   double fraction, int ref_budget,
                                                   int start_col = 0) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ParamError("fraction must lie in (0, 1]");
    if (ref_budget < 0) throw ParamError("ref_budget must be non-negative");

    auto solve_at = [&](int budget) {
        return solve_mec_any(grid, {budget, BudgetKind::Movements, start_col, kind});
    };
    MecSolution ref = solve_at(ref_budget);
    const double target = fraction * ref.energy;

    int lo = 0, hi = ref_budget;
    MecSolution witness = ref;
    int witness_budget = ref_budget;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        MecSolution sol = solve_at(mid);
        if (sol.energy >= target) {
            hi = mid;
            witness = std::move(sol);
            witness_budget = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (witness_budget != lo) witness = solve_at(lo);
    return {lo, std::move(witness)};
}

} // namespace suntrack
