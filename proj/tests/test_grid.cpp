#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include "suntrack/grid.hpp"
#include "suntrack/synth.hpp"
#include "test_support.hpp"

using namespace suntrack;
using testsupport::TempDir;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

const char* kMeta = "eps_deg = 1\nsca_start_deg = 10\ntime_step_min = 1\nscale = 1\n";

} // namespace

TEST_CASE("load_grid maps CSV fields to columns and rows") {
    TempDir dir;
    write_file(dir.file("g.csv"), "1,5,1\n1,5,1\n");
    write_file(dir.file("g.meta"), kMeta);
    const IrradianceGrid g = load_grid(dir.file("g.csv"), dir.file("g.meta"));
    CHECK(g.n_cols == 3);
    CHECK(g.n_rows == 2);
    CHECK(g.weight(1, 0) == 5.0);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.eps_deg == 1.0);
    CHECK(g.sca_start_deg == 10.0);
}

TEST_CASE("load_grid rejects ragged rows") {
    TempDir dir;
    write_file(dir.file("g.csv"), "1,2,3\n4,5\n");
    write_file(dir.file("g.meta"), kMeta);
    CHECK_THROWS_AS(load_grid(dir.file("g.csv"), dir.file("g.meta")), DimensionError);
}

TEST_CASE("load_grid names the bad field on parse errors") {
    TempDir dir;
    write_file(dir.file("g.csv"), "1,2\n3,oops\n");
    write_file(dir.file("g.meta"), kMeta);
    try {
        load_grid(dir.file("g.csv"), dir.file("g.meta"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("field 2") != std::string::npos);
    }
}

TEST_CASE("load_grid requires every metadata key") {
    TempDir dir;
    write_file(dir.file("g.csv"), "1,2\n3,4\n");
    write_file(dir.file("g.meta"), "eps_deg = 1\nsca_start_deg = 0\nscale = 1\n");
    try {
        load_grid(dir.file("g.csv"), dir.file("g.meta"));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("time_step_min") != std::string::npos);
    }
}

TEST_CASE("save then load reproduces the grid exactly") {
    TempDir dir;
    auto g = testsupport::make_grid(3, 2, {0.25, 123456789.0, 1e-3, 7.5, 0.0, 42.0});
    g.eps_deg = 0.2;
    g.sca_start_deg = 10.0;
    g.time_step_min = 1.0;
    g.scale = 1000.0;
    save_grid(g, dir.file("g.csv"), dir.file("g.meta"));
    const IrradianceGrid back = load_grid(dir.file("g.csv"), dir.file("g.meta"));
    CHECK(back.n_cols == g.n_cols);
    CHECK(back.n_rows == g.n_rows);
    CHECK(back.weights == g.weights);
    CHECK(back.eps_deg == g.eps_deg);
    CHECK(back.scale == g.scale);
}

TEST_CASE("round trip is exact for random real-valued grids") {
    TempDir dir;
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        const IrradianceGrid g = testsupport::random_real_grid(rng);
        save_grid(g, dir.file("r.csv"), dir.file("r.meta"));
        const IrradianceGrid back = load_grid(dir.file("r.csv"), dir.file("r.meta"));
        REQUIRE(back.weights == g.weights);
    }
}

TEST_CASE("save_grid validates before writing") {
    TempDir dir;
    SECTION("1x1 grid is a dimension error") {
        IrradianceGrid g;
        g.n_cols = 1;
        g.n_rows = 1;
        g.weights = {1.0};
        CHECK_THROWS_AS(save_grid(g, dir.file("x.csv"), dir.file("x.meta")), DimensionError);
    }
    SECTION("NaN weight is a validation error") {
        auto g = testsupport::make_grid(2, 2, {1, 2, 3, std::nan("")});
        CHECK_THROWS_AS(save_grid(g, dir.file("x.csv"), dir.file("x.meta")), ValidationError);
        CHECK_FALSE(std::filesystem::exists(dir.file("x.csv")));
    }
    SECTION("negative weight is a validation error") {
        auto g = testsupport::make_grid(2, 2, {1, 2, 3, -0.5});
        CHECK_THROWS_AS(save_grid(g, dir.file("x.csv"), dir.file("x.meta")), ValidationError);
    }
    SECTION("unwritable path is an IO error") {
        auto g = testsupport::make_grid(2, 2, {1, 2, 3, 4});
        CHECK_THROWS_AS(save_grid(g, "/nonexistent_dir_suntrack/x.csv", dir.file("x.meta")),
                        IoError);
    }
}

TEST_CASE("global_max") {
    CHECK(global_max(testsupport::make_grid(3, 2, {1, 5, 1, 1, 5, 1})) == 5.0);
    CHECK(global_max(testsupport::constant_grid(4, 3, 0.0)) == 0.0);
    auto g = testsupport::make_grid(3, 2, {1, 5, 1, 1, 5, 1});
    for (auto& w : g.weights) w *= 2.0;
    CHECK(global_max(g) == 10.0);
}

TEST_CASE("synth_day aligns its per-row maximum with the sun diagonal") {
    SynthConfig cfg;
    cfg.n_cols = 21;
    cfg.n_rows = 40;
    cfg.peak_dni = 800.0;
    const IrradianceGrid g = synth_day(cfg);
    int prev_align = 0;
    for (int j = 0; j < g.n_rows; ++j) {
        int argmax = 0;
        for (int i = 1; i < g.n_cols; ++i)
            if (g.weight(i, j) > g.weight(argmax, j)) argmax = i;
        CHECK(argmax == aligned_column(cfg.n_cols, cfg.n_rows, j));
        CHECK(argmax >= prev_align); // alignment never moves backwards
        prev_align = argmax;
    }
}

TEST_CASE("synth_day is linear in the peak and bounded by it") {
    SynthConfig cfg;
    cfg.n_cols = 11;
    cfg.n_rows = 17;
    cfg.peak_dni = 350.0;
    cfg.jitter = 0.3;
    cfg.rng_seed = 99;
    const IrradianceGrid g1 = synth_day(cfg);
    cfg.peak_dni *= 2.0;
    const IrradianceGrid g2 = synth_day(cfg);
    for (std::size_t t = 0; t < g1.weights.size(); ++t) {
        CHECK(g2.weights[t] == 2.0 * g1.weights[t]);
        CHECK(g1.weights[t] >= 0.0);
        CHECK(g1.weights[t] <= 350.0);
    }
}

TEST_CASE("synth_day is deterministic in the seed") {
    SynthConfig cfg;
    cfg.n_cols = 9;
    cfg.n_rows = 12;
    cfg.jitter = 0.5;
    cfg.rng_seed = 1234;
    const IrradianceGrid g1 = synth_day(cfg);
    const IrradianceGrid g2 = synth_day(cfg);
    CHECK(g1.weights == g2.weights);
    cfg.rng_seed = 1235;
    const IrradianceGrid g3 = synth_day(cfg);
    CHECK(g1.weights != g3.weights);
}

TEST_CASE("cloud events attenuate exactly their rows") {
    SynthConfig cfg;
    cfg.n_cols = 9;
    cfg.n_rows = 12;
    const IrradianceGrid clear = synth_day(cfg);
    cfg.cloud_events.push_back({3, 5, 0.25});
    const IrradianceGrid cloudy = synth_day(cfg);
    for (int j = 0; j < cfg.n_rows; ++j) {
        for (int i = 0; i < cfg.n_cols; ++i) {
            const double expected =
                (j >= 3 && j <= 5) ? 0.25 * clear.weight(i, j) : clear.weight(i, j);
            CHECK(cloudy.weight(i, j) == expected);
        }
    }
}

TEST_CASE("synth_day validates its configuration") {
    SynthConfig cfg;
    cfg.n_cols = 5;
    cfg.n_rows = 5;
    SECTION("cloud outside the day") {
        cfg.cloud_events.push_back({2, 7, 0.5});
        CHECK_THROWS_AS(synth_day(cfg), ValidationError);
    }
    SECTION("attenuation above one") {
        cfg.cloud_events.push_back({0, 1, 1.5});
        CHECK_THROWS_AS(synth_day(cfg), ValidationError);
    }
    SECTION("jitter out of range") {
        cfg.jitter = 1.0;
        CHECK_THROWS_AS(synth_day(cfg), ValidationError);
    }
}

TEST_CASE("slice_rows keeps metadata and the selected rows") {
    const auto g = testsupport::make_grid(2, 4, {0, 1, 2, 3, 4, 5, 6, 7});
    const IrradianceGrid s = slice_rows(g, 1, 3);
    CHECK(s.n_rows == 3);
    CHECK(s.weight(0, 0) == 2.0);
    CHECK(s.weight(1, 2) == 7.0);
    CHECK_THROWS_AS(slice_rows(g, 3, 3), DimensionError);
}
