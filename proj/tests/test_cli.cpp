#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "suntrack/grid.hpp"
#include "test_support.hpp"

using testsupport::TempDir;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SUNTRACK_CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.stdout_text.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void write_grid_a(const TempDir& dir) {
    std::ofstream mat(dir.file("a.csv"));
    mat << "1,5,1\n1,5,1\n1,5,1\n";
    std::ofstream meta(dir.file("a.meta"));
    meta << "eps_deg = 1\nsca_start_deg = 10\ntime_step_min = 1\nscale = 1\n";
}

} // namespace

TEST_CASE("solve-mec reports the unique zero-move path") {
    TempDir dir;
    write_grid_a(dir);
    const auto r = run_cli("solve-mec --grid " + dir.file("a.csv") + " --meta " +
                           dir.file("a.meta") + " --moves 0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["movements"] == 0);
    CHECK(j["energy"] == 2.0);
    CHECK(j["path"]["waypoints"].size() == 2);
}

TEST_CASE("solve-mtm distinguishes infeasible instances by exit code") {
    TempDir dir;
    write_grid_a(dir);
    const auto r = run_cli("solve-mtm --grid " + dir.file("a.csv") + " --meta " +
                           dir.file("a.meta") + " --u1 1e9 --u2 2e9");
    CHECK(r.exit_code == 2);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["feasible"] == false);
    CHECK(j["status"] == "infeasible");
}

TEST_CASE("solve-mtm solves the banded instance") {
    TempDir dir;
    write_grid_a(dir);
    const auto r = run_cli("solve-mtm --grid " + dir.file("a.csv") + " --meta " +
                           dir.file("a.meta") + " --u1 2 --u2 5 --no-left");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["movements"] == 1);
    CHECK(j["energy"] == 10.0);
}

TEST_CASE("oracle-check certifies the solvers") {
    const auto r = run_cli("oracle-check --max-size 4 --trials 100 --seed 7");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["message"] == "100/100 agree");
}

TEST_CASE("identical invocations are byte-identical without timings") {
    TempDir dir;
    const std::string gen = "gen --grid " + dir.file("g.csv") + " --meta " + dir.file("g.meta") +
                            " --cols 13 --rows 21 --jitter 0.2 --seed 11";
    REQUIRE(run_cli(gen).exit_code == 0);
    const std::string solve = "solve-mec --grid " + dir.file("g.csv") + " --meta " +
                              dir.file("g.meta") + " --moves 3 --no-timings";
    const auto r1 = run_cli(solve);
    const auto r2 = run_cli(solve);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.stdout_text == r2.stdout_text);

    const std::string forecast = "forecast --grid " + dir.file("g.csv") + " --meta " +
                                 dir.file("g.meta") + " --k 2 --moves 3 --no-timings";
    const auto f1 = run_cli(forecast);
    const auto f2 = run_cli(forecast);
    REQUIRE(f1.exit_code == 0);
    CHECK(f1.stdout_text == f2.stdout_text);
}

TEST_CASE("gen produces a grid that solves end to end") {
    TempDir dir;
    const auto gen = run_cli("gen --grid " + dir.file("g.csv") + " --meta " + dir.file("g.meta") +
                             " --cols 11 --rows 30 --peak-dni 500 --cloud 5:9:0.4");
    REQUIRE(gen.exit_code == 0);
    const auto g = suntrack::load_grid(dir.file("g.csv"), dir.file("g.meta"));
    CHECK(g.n_cols == 11);
    CHECK(g.n_rows == 30);

    const auto sweep = run_cli("sweep-moves --grid " + dir.file("g.csv") + " --meta " +
                               dir.file("g.meta") + " --moves-max 4 --out " + dir.file("s.csv"));
    REQUIRE(sweep.exit_code == 0);
    std::ifstream csv(dir.file("s.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "param,objective,feasible,time_ms");

    const auto fc = run_cli("forecast --grid " + dir.file("g.csv") + " --meta " +
                            dir.file("g.meta") + " --k 2 --moves 4 --fraction 0.9 --out-csv " +
                            dir.file("f.csv"));
    REQUIRE(fc.exit_code == 0);
    std::ifstream fcsv(dir.file("f.csv"));
    std::getline(fcsv, header);
    CHECK(header == "mec,time_ms,fi_mec,fi_moves,fi_time_ms,fi_energy_95,fi_moves_95");
}

TEST_CASE("usage errors exit with code one and a diagnostic") {
    TempDir dir;
    write_grid_a(dir);
    CHECK(run_cli("solve-mtm --grid " + dir.file("a.csv") + " --meta " + dir.file("a.meta") +
                  " --u1 1")
              .exit_code == 1); // missing --u2
    CHECK(run_cli("solve-mec --grid " + dir.file("a.csv") + " --meta " + dir.file("a.meta") +
                  " --moves 1 --bogus-flag")
              .exit_code == 1);
    CHECK(run_cli("solve-mec --grid /no/such/file.csv --meta " + dir.file("a.meta") +
                  " --moves 1")
              .exit_code == 1);
    CHECK(run_cli("sweep-u1 --grid " + dir.file("a.csv") + " --meta " + dir.file("a.meta") +
                  " --u1-step -1")
              .exit_code == 1);
}

TEST_CASE("sweep-u1 defaults the upper threshold to the grid maximum") {
    TempDir dir;
    write_grid_a(dir);
    const auto r = run_cli("sweep-u1 --grid " + dir.file("a.csv") + " --meta " +
                           dir.file("a.meta") + " --u1-step 2 --no-left --no-timings");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["u2"] == 5.0);
    REQUIRE(j["rows"].size() >= 2);
    CHECK(j["rows"][0]["objective"] == 0.0);
    CHECK(j["rows"][1]["objective"] == 1.0);
}
