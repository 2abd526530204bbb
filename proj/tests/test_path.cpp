#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "suntrack/path.hpp"
#include "suntrack/synth.hpp"
#include "test_support.hpp"

using namespace suntrack;
using testsupport::grid_a;
using testsupport::make_grid;

namespace {

GridPath path_of(std::vector<Waypoint> wps, PathKind kind = PathKind::General) {
    GridPath p;
    p.start_col = wps.front().col;
    p.kind = kind;
    p.waypoints = std::move(wps);
    return p;
}

} // namespace

TEST_CASE("validate accepts well-formed paths and names the first violation") {
    const auto g3 = testsupport::constant_grid(3, 3, 1.0);

    CHECK(validate(path_of({{0, 0}, {1, 0}, {1, 2}}, PathKind::NoLeft), g3).ok());

    auto kindviol = validate(path_of({{0, 0}, {1, 0}, {1, 2}, {0, 2}}, PathKind::NoLeft), g3);
    CHECK(kindviol.code == Validation::Code::LeftMoveForbidden);

    auto collinear = validate(path_of({{0, 0}, {0, 1}, {0, 2}}), g3);
    CHECK(collinear.code == Validation::Code::RedundantWaypoint);

    auto bounds = validate(path_of({{0, 0}, {3, 0}, {3, 2}}), g3);
    CHECK(bounds.code == Validation::Code::OutOfBounds);

    auto rowdrop = validate(path_of({{0, 0}, {0, 2}, {1, 2}, {1, 1}}), g3);
    CHECK(rowdrop.code == Validation::Code::DecreasingRow);

    auto diag = validate(path_of({{0, 0}, {1, 1}, {1, 2}}), g3);
    CHECK(diag.code == Validation::Code::DiagonalSegment);

    auto dup = validate(path_of({{0, 0}, {0, 0}, {0, 2}}), g3);
    CHECK(dup.code == Validation::Code::DuplicateWaypoint);

    auto origin = validate(GridPath{{{1, 0}, {1, 2}}, PathKind::General, 0}, g3);
    CHECK(origin.code == Validation::Code::BadOrigin);

    auto terminal = validate(path_of({{0, 0}, {0, 1}, {1, 1}}), g3);
    CHECK(terminal.code == Validation::Code::BadTerminalRow);

    auto reversal = validate(path_of({{0, 0}, {2, 0}, {1, 0}, {1, 2}}), g3);
    CHECK(reversal.code == Validation::Code::RedundantWaypoint);

    auto tooshort = validate(path_of({{0, 0}}), g3);
    CHECK(tooshort.code == Validation::Code::TooShort);
}

TEST_CASE("vertical points exclude each segment's upper endpoint") {
    using W = std::vector<Waypoint>;
    CHECK(vertical_points(path_of({{0, 0}, {1, 0}, {1, 2}})) == W{{1, 0}, {1, 1}});
    CHECK(vertical_points(path_of({{0, 0}, {0, 2}})) == W{{0, 0}, {0, 1}});
    // a final rotation in the top row contributes nothing
    CHECK(vertical_points(path_of({{0, 0}, {0, 2}, {1, 2}})) == W{{0, 0}, {0, 1}});
}

TEST_CASE("energy is eps times the sum over vertical points") {
    const auto g = grid_a();
    CHECK(energy(path_of({{0, 0}, {1, 0}, {1, 2}}), g) == 10.0);
    CHECK(energy(path_of({{0, 0}, {0, 2}}), g) == 2.0);
    const auto zero = testsupport::constant_grid(3, 3, 0.0);
    CHECK(energy(path_of({{0, 0}, {2, 0}, {2, 2}}), zero) == 0.0);
}

TEST_CASE("energy scales with eps and with the weights") {
    auto g = grid_a();
    const auto p = path_of({{0, 0}, {1, 0}, {1, 2}});
    g.eps_deg = 0.5;
    CHECK(energy(p, g) == 5.0);
    g.eps_deg = 1.0;
    for (auto& w : g.weights) w *= 4.0; // exact scaling by a power of two
    CHECK(energy(p, g) == 40.0);
}

TEST_CASE("energy is invariant under a final top-row rotation") {
    std::mt19937 rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto g = testsupport::random_real_grid(rng, 8);
        GridPath p = testsupport::random_path(rng, g, PathKind::General);
        REQUIRE(validate(p, g).ok());
        GridPath q = p;
        if (q.waypoints.back().row == q.waypoints[q.waypoints.size() - 2].row)
            q.waypoints.pop_back(); // drop an existing top-row rotation
        else if (q.waypoints.back().col + 1 < g.n_cols)
            q.waypoints.push_back({q.waypoints.back().col + 1, g.n_rows - 1});
        CHECK(energy(p, g) == energy(q, g));
    }
}

TEST_CASE("counts relate waypoints, movements and turns") {
    const auto p1 = path_of({{0, 0}, {1, 0}, {1, 2}});
    CHECK(counts(p1).waypoints == 3);
    CHECK(counts(p1).movements == 1);
    CHECK(counts(p1).turns == 1);

    const auto p2 = path_of({{0, 0}, {0, 1}, {1, 1}, {1, 2}});
    CHECK(counts(p2).waypoints == 4);
    CHECK(counts(p2).movements == 1);
    CHECK(counts(p2).turns == 2);

    const auto p3 = path_of({{0, 0}, {0, 2}});
    CHECK(counts(p3).waypoints == 2);
    CHECK(counts(p3).movements == 0);
    CHECK(counts(p3).turns == 0);
}

TEST_CASE("waypoint count follows the segment shape on random paths") {
    std::mt19937 rng(22);
    for (int t = 0; t < 200; ++t) {
        const auto g = testsupport::random_real_grid(rng, 7);
        const PathKind kind = rng() % 2 ? PathKind::General : PathKind::NoLeft;
        const GridPath p = testsupport::random_path(rng, g, kind);
        REQUIRE(validate(p, g).ok());
        const PathCounts c = counts(p);
        const bool starts_horizontal = p.waypoints[1].row == 0 && p.waypoints[1].col != p.start_col;
        const auto& wp = p.waypoints;
        const bool ends_horizontal = wp[wp.size() - 2].row == wp.back().row;
        CHECK(c.waypoints ==
              2 * c.movements + 2 - (starts_horizontal ? 1 : 0) - (ends_horizontal ? 1 : 0));
        if (!ends_horizontal)
            CHECK((c.waypoints == 2 * c.movements + 1 || c.waypoints == 2 * c.movements + 2));
        CHECK(c.turns == c.waypoints - 2);
    }
}

TEST_CASE("reference tracking path follows per-row maxima") {
    SECTION("synthetic day with no clouds") {
        SynthConfig cfg;
        cfg.n_cols = 13;
        cfg.n_rows = 20;
        const IrradianceGrid g = synth_day(cfg);
        const GridPath ref = reference_tracking_path(g);
        REQUIRE(validate(ref, g).ok());
        const auto points = vertical_points(ref);
        REQUIRE(static_cast<int>(points.size()) == g.n_rows - 1);
        for (const auto& p : points)
            CHECK(p.col == aligned_column(cfg.n_cols, cfg.n_rows, p.row));
    }
    SECTION("constant grid stays put") {
        const auto g = testsupport::constant_grid(4, 5, 3.0);
        const GridPath ref = reference_tracking_path(g);
        CHECK(ref.waypoints == std::vector<Waypoint>{{0, 0}, {0, 4}});
        CHECK(counts(ref).movements == 0);
    }
    SECTION("alternating maxima cost one movement per flip") {
        const auto g = make_grid(2, 3, {1, 9, 9, 1, 0, 0});
        const GridPath ref = reference_tracking_path(g);
        const auto points = vertical_points(ref);
        REQUIRE(points.size() == 2);
        CHECK(points[0].col == 1);
        CHECK(points[1].col == 0);
        CHECK(counts(ref).movements == 2);
    }
}
