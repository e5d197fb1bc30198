#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>

#include "fasaco/grid.hpp"

using namespace fasaco;

TEST_CASE("step moves one cell in the motion model directions") {
    CellCoord c{3, 5};
    REQUIRE(step(c, Direction::Up) == CellCoord{2, 5});
    REQUIRE(step(c, Direction::Down) == CellCoord{4, 5});
    REQUIRE(step(c, Direction::Left) == CellCoord{3, 4});
    REQUIRE(step(c, Direction::Right) == CellCoord{3, 6});
}

TEST_CASE("manhattan distance") {
    REQUIRE(manhattan({1, 1}, {1, 2}) == 1);
    REQUIRE(manhattan({2, 3}, {5, 1}) == 5);
    REQUIRE(manhattan({4, 4}, {4, 4}) == 0);
}

TEST_CASE("cell_index is column-major and 1-based") {
    // u = (j-1)*rows + i
    REQUIRE(cell_index({1, 1}, 4) == 1);
    REQUIRE(cell_index({4, 1}, 4) == 4);
    REQUIRE(cell_index({1, 2}, 4) == 5);
    REQUIRE(cell_index({2, 3}, 4) == 10);

    SECTION("round-trips with cell_coords over a full grid") {
        const int rows = 7, cols = 5;
        std::set<int> seen;
        for (int i = 1; i <= rows; ++i) {
            for (int j = 1; j <= cols; ++j) {
                int u = cell_index({i, j}, rows);
                REQUIRE(cell_coords(u, rows) == CellCoord{i, j});
                seen.insert(u);
            }
        }
        REQUIRE(seen.size() == static_cast<size_t>(rows) * cols);
        REQUIRE(*seen.begin() == 1);
        REQUIRE(*seen.rbegin() == rows * cols);
    }

    SECTION("rejects out-of-range input") {
        REQUIRE_THROWS_AS(cell_index({0, 1}, 4), std::domain_error);
        REQUIRE_THROWS_AS(cell_index({5, 1}, 4), std::domain_error);
        REQUIRE_THROWS_AS(cell_index({1, 0}, 4), std::domain_error);
        REQUIRE_THROWS_AS(cell_coords(0, 4), std::domain_error);
    }
}

TEST_CASE("cell_state classifies probabilities") {
    REQUIRE(cell_state(0.0).kind == CellState::Kind::Free);
    REQUIRE(cell_state(1.0).kind == CellState::Kind::Occupied);
    REQUIRE(cell_state(0.5).kind == CellState::Kind::Unknown);
    REQUIRE(cell_state(0.3).kind == CellState::Kind::Probabilistic);
    REQUIRE(cell_state(0.3).p == 0.3);
}

TEST_CASE("OccupancyGrid construction and accessors") {
    OccupancyGrid grid = OccupancyGrid::uniform(3, 4, 0.0);
    REQUIRE(grid.rows() == 3);
    REQUIRE(grid.cols() == 4);
    REQUIRE(grid.size() == 12);
    REQUIRE(grid.traversable_count() == 12);
    REQUIRE(grid.resolution() == 1.0);

    SECTION("offset and coord_at are inverse") {
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 4; ++j)
                REQUIRE(grid.coord_at(grid.offset({i, j})) == CellCoord{i, j});
        REQUIRE_THROWS_AS(grid.coord_at(12), std::domain_error);
        REQUIRE_THROWS_AS(grid.offset({4, 1}), std::domain_error);
    }

    SECTION("index_of validates both dimensions") {
        REQUIRE(grid.index_of({2, 3}) == (3 - 1) * 3 + 2);
        REQUIRE(grid.coord_of_index(grid.index_of({3, 4})) == CellCoord{3, 4});
        REQUIRE_THROWS_AS(grid.index_of({1, 5}), std::domain_error);
        REQUIRE_THROWS_AS(grid.coord_of_index(13), std::domain_error);
    }

    SECTION("traversability thresholds at 0.5") {
        OccupancyGrid g(1, 3, {0.49, 0.5, 0.51});
        REQUIRE(g.traversable({1, 1}));
        REQUIRE_FALSE(g.traversable({1, 2}));
        REQUIRE_FALSE(g.traversable({1, 3}));
        REQUIRE(g.traversable_count() == 1);
    }

    SECTION("rejects malformed input") {
        REQUIRE_THROWS_AS(OccupancyGrid(0, 3, {}), std::invalid_argument);
        REQUIRE_THROWS_AS(OccupancyGrid(1, 2, {0.0}), std::invalid_argument);
        REQUIRE_THROWS_AS(OccupancyGrid(1, 1, {1.5}), std::invalid_argument);
        REQUIRE_THROWS_AS(OccupancyGrid(1, 1, {0.0}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("neighbors respects direction order and blocking") {
    OccupancyGrid grid = parse_ascii_map(
        "...\n"
        ".#.\n"
        "...\n");
    SECTION("blocked and off-map neighbors are dropped, order is Up, Down, Left, Right") {
        REQUIRE(neighbors(grid, {2, 1}) == std::vector<CellCoord>{{1, 1}, {3, 1}});
        REQUIRE(neighbors(grid, {1, 2}) == std::vector<CellCoord>{{1, 1}, {1, 3}});
        REQUIRE(neighbors(grid, {2, 3}) == std::vector<CellCoord>{{1, 3}, {3, 3}});
    }
    SECTION("corner cell has two neighbors") {
        REQUIRE(neighbors(grid, {1, 1}) == std::vector<CellCoord>{{2, 1}, {1, 2}});
    }
}

TEST_CASE("parse_ascii_map handles the three cell kinds") {
    OccupancyGrid grid = parse_ascii_map(
        ".#?\n"
        "...\n");
    REQUIRE(grid.rows() == 2);
    REQUIRE(grid.cols() == 3);
    REQUIRE(grid.probability({1, 1}) == 0.0);
    REQUIRE(grid.probability({1, 2}) == 1.0);
    REQUIRE(grid.probability({1, 3}) == 0.5);
    REQUIRE(grid.state({1, 3}).kind == CellState::Kind::Unknown);
    REQUIRE(grid.traversable_count() == 4);

    SECTION("round-trips through to_ascii") {
        REQUIRE(to_ascii(grid) == ".#?\n...\n");
        REQUIRE(to_ascii(parse_ascii_map(to_ascii(grid))) == to_ascii(grid));
    }

    SECTION("accepts input without trailing newline") {
        OccupancyGrid g = parse_ascii_map("..\n##");
        REQUIRE(g.rows() == 2);
        REQUIRE(g.cols() == 2);
    }

    SECTION("rejects malformed input") {
        REQUIRE_THROWS_AS(parse_ascii_map("..\n...\n"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_ascii_map(".x.\n"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_ascii_map(""), std::runtime_error);
    }
}

TEST_CASE("parse_pgm_map thresholds pixels into free, occupied, unknown") {
    // p = 1 - v/255; white (255) -> free, black (0) -> occupied, mid -> unknown
    std::string p2 =
        "P2\n"
        "# a comment line\n"
        "3 2\n"
        "255\n"
        "255 0 128\n"
        "254 60 200\n";
    OccupancyGrid grid = parse_pgm_map(p2);
    REQUIRE(grid.rows() == 2);
    REQUIRE(grid.cols() == 3);
    REQUIRE(grid.probability({1, 1}) == 0.0);
    REQUIRE(grid.probability({1, 2}) == 1.0);
    REQUIRE(grid.probability({1, 3}) == 0.5);
    REQUIRE(grid.probability({2, 1}) == 0.0);   // p = 1/255 < 0.196
    REQUIRE(grid.probability({2, 2}) == 1.0);   // p = 0.765 >= 0.65
    REQUIRE(grid.probability({2, 3}) == 0.5);   // p = 0.216 between thresholds

    SECTION("P5 binary payload matches the ASCII parse") {
        std::string p5 = "P5\n3 2\n255\n";
        for (unsigned char v : {255, 0, 128, 254, 60, 200}) p5 += static_cast<char>(v);
        OccupancyGrid bin = parse_pgm_map(p5);
        REQUIRE(to_ascii(bin) == to_ascii(grid));
    }

    SECTION("rejects malformed input") {
        REQUIRE_THROWS_AS(parse_pgm_map("P3\n1 1\n255\n0\n"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_pgm_map("P2\n2 2\n255\n0 0 0\n"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_pgm_map("P2\n1 1\n999\n0\n"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_pgm_map(p2, 0.1, 0.2), std::invalid_argument);
    }
}
