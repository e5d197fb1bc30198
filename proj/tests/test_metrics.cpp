#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "fasaco/baselines.hpp"
#include "fasaco/colony.hpp"
#include "fasaco/mapgen.hpp"
#include "fasaco/metrics.hpp"

using namespace fasaco;

TEST_CASE("recovered_cells counts distinct cells entered at least twice") {
    SECTION("no repeats") {
        Tour t;
        t.cells = {{1, 1}, {1, 2}, {2, 2}};
        REQUIRE(recovered_cells(t) == 0);
    }
    SECTION("one cell revisited once") {
        Tour t;
        t.cells = {{1, 1}, {1, 2}, {1, 1}};
        REQUIRE(recovered_cells(t) == 1);
    }
    SECTION("multiplicity beyond two still counts once per cell") {
        Tour t;
        t.cells = {{1, 1}, {2, 1}, {1, 1}, {2, 1}, {1, 1}, {3, 1}};
        REQUIRE(recovered_cells(t) == 2);
    }
    SECTION("empty and singleton tours") {
        Tour t;
        REQUIRE(recovered_cells(t) == 0);
        t.cells = {{4, 4}};
        REQUIRE(recovered_cells(t) == 0);
    }
    SECTION("multiset recount oracle on random walks") {
        Rng rng(99);
        OccupancyGrid grid = OccupancyGrid::uniform(6, 6, 0.0);
        for (int trial = 0; trial < 30; ++trial) {
            Tour t;
            CellCoord at{1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6)};
            t.cells.push_back(at);
            for (int k = 0; k < 40; ++k) {
                auto moves = neighbors(grid, at);
                at = moves[rng() % moves.size()];
                t.cells.push_back(at);
            }
            std::map<CellCoord, int> entries;
            for (CellCoord c : t.cells) ++entries[c];
            int expected = 0;
            for (const auto& [cell, n] : entries)
                if (n >= 2) ++expected;
            REQUIRE(recovered_cells(t) == expected);
        }
    }
}

TEST_CASE("coverage_complete compares tour cells to the reachable set") {
    OccupancyGrid grid = OccupancyGrid::uniform(2, 2, 0.0);
    Tour t;
    t.cells = {{1, 1}, {1, 2}, {2, 2}, {2, 1}};
    REQUIRE(coverage_complete(t, grid));

    SECTION("a missing cell fails") {
        t.cells.pop_back();
        REQUIRE_FALSE(coverage_complete(t, grid));
    }
    SECTION("the empty tour fails") {
        Tour empty;
        REQUIRE_FALSE(coverage_complete(empty, grid));
    }
    SECTION("re-covered cells are fine") {
        t.cells.push_back({2, 2});
        REQUIRE(coverage_complete(t, grid));
    }
    SECTION("reachability is taken from the tour's first cell") {
        OccupancyGrid split = parse_ascii_map(
            "..#.\n"
            "..#.\n");
        Tour left;
        left.cells = {{1, 1}, {2, 1}, {2, 2}, {1, 2}};
        REQUIRE(coverage_complete(left, split));  // (1,4),(2,4) are unreachable
        Tour partial;
        partial.cells = {{1, 1}, {2, 1}};
        REQUIRE_FALSE(coverage_complete(partial, split));
    }
}

TEST_CASE("make_report assembles the evaluation record") {
    OccupancyGrid grid = OccupancyGrid::uniform(3, 4, 0.0);
    Tour t = zigzag(grid, {1, 1});
    CoverageReport report = make_report(t, grid, 1.5);
    REQUIRE(report.n_r == 0);
    REQUIRE(report.steps == 11);
    REQUIRE(report.free_cells == 12);
    REQUIRE(report.covered);
    REQUIRE(report.t_o == 1.5);

    SECTION("empty tour reports zeros") {
        Tour empty;
        CoverageReport r = make_report(empty, grid);
        REQUIRE(r.steps == 0);
        REQUIRE(r.free_cells == 0);
        REQUIRE_FALSE(r.covered);
    }
}

TEST_CASE("step count decomposes into fresh cells plus re-entries") {
    // Entering each cell once costs free_cells - 1 steps; every extra step is
    // a re-entry, and a cell must be re-entered to be re-covered.
    SolverParams params;
    for (int trial = 0; trial < 6; ++trial) {
        OccupancyGrid grid = generate_random_map(9, 9, 0.25, 700 + trial);
        Rng rng(trial);
        PheromoneField field(grid, params.tau0);
        Tour t = construct_tour(grid, field, params, rng, default_start(grid), 2);
        CoverageReport report = make_report(t, grid);
        REQUIRE(report.covered);
        int re_entries = report.steps - (report.free_cells - 1);
        REQUIRE(re_entries >= 0);
        REQUIRE(re_entries >= report.n_r);
        if (report.n_r == 0) REQUIRE(report.steps == report.free_cells - 1);
    }
}

TEST_CASE("thread_cpu_seconds is monotone and measure_cpu_time is non-negative") {
    double a = thread_cpu_seconds();
    volatile double sink = 0.0;
    double spent = measure_cpu_time([&] {
        for (int k = 0; k < 2000000; ++k) sink = sink + k * 0.5;
    });
    double b = thread_cpu_seconds();
    REQUIRE(spent >= 0.0);
    REQUIRE(b >= a);
    REQUIRE(b - a >= spent);
}
