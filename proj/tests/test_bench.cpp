#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "fasaco/bench.hpp"

using namespace fasaco;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.maps = {MapSource::parse("gen:9x9:0.15:3"), MapSource::parse("gen:8x10:0.2:4")};
    config.schedules = {VelocitySchedule::decreasing(4, 1), VelocitySchedule::constant(2)};
    config.params.ants = 24;
    config.repeats = 3;
    config.no_timing = true;
    return config;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("MapSource::parse splits generator specs and file paths") {
    SECTION("generator spec") {
        MapSource src = MapSource::parse("gen:30x30:0.15:7");
        REQUIRE(src.kind == MapSource::Kind::Generated);
        REQUIRE(src.id == "gen:30x30:0.15:7");
        REQUIRE(src.rows == 30);
        REQUIRE(src.cols == 30);
        REQUIRE(src.density == Catch::Approx(0.15));
        REQUIRE(src.seed == 7);
    }

    SECTION("file path takes its stem as the id") {
        MapSource src = MapSource::parse("maps/office.txt");
        REQUIRE(src.kind == MapSource::Kind::File);
        REQUIRE(src.path == "maps/office.txt");
        REQUIRE(src.id == "office");
        REQUIRE(MapSource::parse("/a/b/map01.pgm").id == "map01");
        REQUIRE(MapSource::parse("plain").id == "plain");
    }

    SECTION("malformed generator specs are rejected") {
        for (const char* bad : {"gen:30:0.15:7", "gen:30x30:0.15", "gen:axb:0.1:2",
                                "gen:30x30:zz:1", "gen:5x5:0.1:notanumber"}) {
            INFO(bad);
            REQUIRE_THROWS_AS(MapSource::parse(bad), std::invalid_argument);
        }
    }
}

TEST_CASE("MapSource::load reproduces the generator and reads map files") {
    SECTION("generated source equals a direct generator call") {
        OccupancyGrid via_source = MapSource::parse("gen:12x14:0.25:99").load();
        OccupancyGrid direct = generate_random_map(12, 14, 0.25, 99);
        REQUIRE(to_ascii(via_source) == to_ascii(direct));
    }

    SECTION("ascii file") {
        fs::path p = fs::temp_directory_path() / "fasaco_load_test.txt";
        std::ofstream(p) << "..#\n...\n";
        OccupancyGrid grid = MapSource::parse(p.string()).load();
        REQUIRE(grid.rows() == 2);
        REQUIRE(grid.cols() == 3);
        REQUIRE_FALSE(grid.traversable({1, 3}));
        fs::remove(p);
    }

    SECTION("pgm file goes through the pgm parser") {
        fs::path p = fs::temp_directory_path() / "fasaco_load_test.pgm";
        std::ofstream(p) << "P2\n2 2\n255\n255 0\n255 255\n";
        OccupancyGrid grid = MapSource::parse(p.string()).load();
        REQUIRE(grid.rows() == 2);
        REQUIRE(grid.traversable({1, 1}));
        REQUIRE_FALSE(grid.traversable({1, 2}));
        fs::remove(p);
    }

    SECTION("missing file") {
        REQUIRE_THROWS_AS(MapSource::parse("/nonexistent/nope.txt").load(), std::runtime_error);
    }
}

TEST_CASE("mix_seed is deterministic and sensitive to every input") {
    std::uint64_t base = mix_seed(7, "mapA", "fasaco:constant:2", 0);
    REQUIRE(base == mix_seed(7, "mapA", "fasaco:constant:2", 0));
    std::set<std::uint64_t> seen{base,
                                 mix_seed(8, "mapA", "fasaco:constant:2", 0),
                                 mix_seed(7, "mapB", "fasaco:constant:2", 0),
                                 mix_seed(7, "mapA", "fasaco:constant:3", 0),
                                 mix_seed(7, "mapA", "fasaco:constant:2", 1)};
    REQUIRE(seen.size() == 5);
}

TEST_CASE("quantile interpolates linearly on the sorted sample") {
    std::vector<double> s{1.0, 2.0, 3.0, 4.0};
    REQUIRE(detail::quantile(s, 0.5) == Catch::Approx(2.5));
    REQUIRE(detail::quantile(s, 0.25) == Catch::Approx(1.75));
    REQUIRE(detail::quantile(s, 0.75) == Catch::Approx(3.25));
    REQUIRE(detail::quantile(s, 0.0) == 1.0);
    REQUIRE(detail::quantile(s, 1.0) == 4.0);
    REQUIRE(detail::quantile({5.0}, 0.5) == 5.0);
    REQUIRE(detail::quantile({}, 0.5) == 0.0);
}

TEST_CASE("sanitize_filename keeps only portable characters") {
    REQUIRE(detail::sanitize_filename("gen:10x10:0.1:3") == "gen-10x10-0-1-3");
    REQUIRE(detail::sanitize_filename("office_2-b") == "office_2-b");
}

TEST_CASE("ExperimentConfig validation") {
    ExperimentConfig config = small_config();
    REQUIRE_NOTHROW(config.validate());
    SECTION("no maps") {
        config.maps.clear();
        REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SECTION("no schedules") {
        config.schedules.clear();
        REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SECTION("bad repeats") {
        config.repeats = 0;
        REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SECTION("bad solver params") {
        config.params.q0 = 2.0;
        REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    }
}

TEST_CASE("run_experiment_suite produces the full row grid") {
    ExperimentConfig config = small_config();
    ResultTable table = run_experiment_suite(config);

    // per map: 2 schedules x 3 repeats fasaco, 3 aco, 1 spiral-stc, 1 zigzag
    REQUIRE(table.rows.size() == 2 * (6 + 3 + 1 + 1));
    REQUIRE(table.aggregates.size() == 2 * (2 + 1 + 1 + 1));
    REQUIRE(table.all_covered());

    SECTION("rows carry the expected labels in fixed order") {
        REQUIRE(table.rows[0].map == "gen:9x9:0.15:3");
        REQUIRE(table.rows[0].algorithm == "fasaco");
        REQUIRE(table.rows[0].schedule == "decreasing:4..1");
        REQUIRE(table.rows[6].algorithm == "aco");
        REQUIRE(table.rows[6].schedule == "-");
        REQUIRE(table.rows[9].algorithm == "spiral-stc");
        REQUIRE(table.rows[10].algorithm == "zigzag");
        REQUIRE(table.rows[11].map == "gen:8x10:0.2:4");
    }

    SECTION("repeats get distinct seeds, deterministic baselines get seed 0") {
        REQUIRE(table.rows[0].seed != table.rows[1].seed);
        REQUIRE(table.rows[9].seed == 0);
        REQUIRE(table.rows[10].seed == 0);
    }

    SECTION("no_timing zeroes every t_o") {
        for (const ResultRow& r : table.rows) REQUIRE(r.report.t_o == 0.0);
    }

    SECTION("aggregates summarize their rows") {
        const AggregateRow& agg = table.aggregates[0];
        REQUIRE(agg.map == "gen:9x9:0.15:3");
        REQUIRE(agg.algorithm == "fasaco");
        REQUIRE(agg.schedule == "decreasing:4..1");
        REQUIRE(agg.runs == 3);
        REQUIRE(agg.all_covered);
        std::vector<double> nr;
        for (int k = 0; k < 3; ++k) nr.push_back(table.rows[k].report.n_r);
        std::sort(nr.begin(), nr.end());
        REQUIRE(agg.median_n_r == detail::quantile(nr, 0.5));
        REQUIRE(agg.iqr_n_r == detail::quantile(nr, 0.75) - detail::quantile(nr, 0.25));
    }
}

TEST_CASE("run_experiment_suite output is reproducible") {
    ExperimentConfig config = small_config();
    ResultTable a = run_experiment_suite(config);
    ResultTable b = run_experiment_suite(config);
    REQUIRE(a.to_csv() == b.to_csv());
    REQUIRE(a.to_json() == b.to_json());

    SECTION("a parallel run lands the identical table") {
        config.jobs = 2;
        REQUIRE(run_experiment_suite(config).to_csv() == a.to_csv());
    }
}

TEST_CASE("result serialization round-trips through the declared formats") {
    ExperimentConfig config = small_config();
    config.maps = {config.maps[0]};
    config.repeats = 2;
    ResultTable table = run_experiment_suite(config);

    SECTION("csv header and field count") {
        std::string csv = table.to_csv();
        REQUIRE(csv.rfind("map,algorithm,schedule,seed,n_r,t_o_seconds,steps,covered\n", 0) == 0);
        std::istringstream lines(csv);
        std::string line;
        std::getline(lines, line);
        int rows = 0;
        while (std::getline(lines, line)) {
            REQUIRE(std::count(line.begin(), line.end(), ',') == 7);
            ++rows;
        }
        REQUIRE(rows == static_cast<int>(table.rows.size()));
    }

    SECTION("json structure") {
        nlohmann::json j = table.to_json();
        REQUIRE(j.contains("maps"));
        const auto& m = j["maps"]["gen:9x9:0.15:3"];
        REQUIRE(m["runs"].size() == table.rows.size());
        REQUIRE(m["aggregates"].size() == table.aggregates.size());
        REQUIRE(m["runs"][0].contains("n_r"));
        REQUIRE(m["aggregates"][0].contains("median_n_r"));
        // the serialized text parses back
        nlohmann::json reparsed = nlohmann::json::parse(j.dump());
        REQUIRE(reparsed == j);
    }
}

TEST_CASE("figures_dir writes one SVG per map and algorithm") {
    fs::path dir = fs::temp_directory_path() / "fasaco_test_figs";
    fs::remove_all(dir);
    ExperimentConfig config = small_config();
    config.maps = {config.maps[0]};
    config.repeats = 1;
    config.figures_dir = dir.string();
    run_experiment_suite(config);

    for (const char* algo : {"fasaco", "aco", "spiral-stc", "zigzag"}) {
        fs::path p = dir / (std::string("gen-9x9-0-15-3_") + algo + ".svg");
        INFO(p.string());
        REQUIRE(fs::exists(p));
        REQUIRE(slurp(p).rfind("<?xml", 0) == 0);
    }
    fs::remove_all(dir);
}
