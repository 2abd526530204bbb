#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"

namespace suntrack {

/// Multiplicative DNI dip over rows [start_row, end_row], both inclusive.
/// attenuation = 1 leaves the day untouched, 0 blacks the band out.
struct CloudEvent {
    int start_row = 0;
    int end_row = 0;
    double attenuation = 1.0;
};

/// Parameters of the synthetic day generator.
///
/// The generated weight is DNI(row) * kernel(distance to the aligned column):
/// a flat-top acceptance window riding the sun/tracker alignment diagonal,
/// scaled by a bell-shaped daily DNI profile with optional cloud dips and
/// optional per-row multiplicative jitter.
struct SynthConfig {
    int n_cols = 0;
    int n_rows = 0;
    double peak_dni = 1000.0;
    int acceptance_halfwidth_cols = 2; ///< flat-top half width, columns
    int falloff_cols = 4;              ///< linear decay width beyond the flat top
    std::vector<CloudEvent> cloud_events;
    std::uint64_t rng_seed = 0;
    double jitter = 0.0; ///< per-row DNI jitter amplitude in [0, 1)

    // Metadata carried into the produced grid.
    double eps_deg = 1.0;
    double sca_start_deg = 10.0;
    double time_step_min = 1.0;
    double scale = 1.0;
};

inline void validate_synth_config(const SynthConfig& c) {
    if (c.n_cols < 2 || c.n_rows < 2)
        throw ValidationError("synthetic day needs at least a 2x2 grid");
    if (!(c.peak_dni > 0.0) || !std::isfinite(c.peak_dni))
        throw ValidationError("peak_dni must be positive and finite");
    if (c.acceptance_halfwidth_cols < 1)
        throw ValidationError("acceptance_halfwidth_cols must be positive");
    if (c.falloff_cols < 1)
        throw ValidationError("falloff_cols must be positive");
    if (!(c.jitter >= 0.0 && c.jitter < 1.0))
        throw ValidationError("jitter must lie in [0, 1)");
    for (const auto& ev : c.cloud_events) {
        if (ev.start_row < 0 || ev.end_row >= c.n_rows || ev.start_row > ev.end_row)
            throw ValidationError("cloud event rows must satisfy 0 <= start <= end < n_rows");
        if (!(ev.attenuation >= 0.0 && ev.attenuation <= 1.0))
            throw ValidationError("cloud attenuation must lie in [0, 1]");
    }
}

/// Column the sun is aligned with at row j: the alignment diagonal mapped
/// linearly onto the column range. Monotone non-decreasing in j.
inline int aligned_column(int n_cols, int n_rows, int row) {
    if (n_rows <= 1) return 0;
    const double t = static_cast<double>(row) / (n_rows - 1);
    return static_cast<int>(std::llround(t * (n_cols - 1)));
}

/// Deterministic synthetic day. Same config (including seed) => same grid;
/// every weight lies in [0, peak_dni].
inline IrradianceGrid synth_day(const SynthConfig& c) {
    validate_synth_config(c);

    IrradianceGrid g;
    g.n_cols = c.n_cols;
    g.n_rows = c.n_rows;
    g.eps_deg = c.eps_deg;
    g.sca_start_deg = c.sca_start_deg;
    g.time_step_min = c.time_step_min;
    g.scale = c.scale;
    g.weights.assign(static_cast<std::size_t>(c.n_cols) * c.n_rows, 0.0);

    std::mt19937_64 rng(c.rng_seed);
    const int flat = c.acceptance_halfwidth_cols;
    const int fall = c.falloff_cols;

    for (int j = 0; j < c.n_rows; ++j) {
        // Bell evaluated at row centers: zero exactly at the day edges, so
        // every sampled row keeps a strictly positive profile.
        const double bell = std::sin(std::numbers::pi * (j + 0.5) / c.n_rows);
        double dni = c.peak_dni * bell;
        for (const auto& ev : c.cloud_events)
            if (j >= ev.start_row && j <= ev.end_row) dni *= ev.attenuation;
        if (c.jitter > 0.0) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            dni *= 1.0 - c.jitter * u;
        } else {
            rng(); // keep the row/seed association independent of jitter
        }

        const int align = aligned_column(c.n_cols, c.n_rows, j);
        for (int i = 0; i < c.n_cols; ++i) {
            const int d = std::abs(i - align);
            double kernel = 0.0;
            if (d <= flat) {
                // Flat to one part in 1e12, but strictly decreasing away from
                // the aligned column: the per-row argmax is always unique.
                kernel = 1.0 - d * 0x1.0p-40;
            } else if (d < flat + fall) {
                kernel = (1.0 - flat * 0x1.0p-40) *
                         (static_cast<double>(flat + fall - d) / fall);
            }
            g.weight(i, j) = dni * kernel;
        }
    }
    return g;
}

} // namespace suntrack
