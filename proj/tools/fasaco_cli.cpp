#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fasaco/bench.hpp"

namespace {

using nlohmann::json;

fasaco::CellCoord parse_start(const std::string& text) {
    const size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--start expects 'i,j', got '" + text + "'");
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

struct PlanOptions {
    std::string map;
    std::string algo = "fasaco";
    std::string schedule = "decreasing:8..1";
    std::string start;
    fasaco::SolverParams params;
    bool no_timing = false;
    std::string out_json, out_svg, out_heatmap, out_pheromone_csv;
};

int run_plan(const PlanOptions& opt) {
    const fasaco::MapSource src = fasaco::MapSource::parse(opt.map);
    const fasaco::OccupancyGrid grid = src.load();
    const fasaco::CellCoord start =
        opt.start.empty() ? fasaco::default_start(grid) : parse_start(opt.start);
    const fasaco::VelocitySchedule schedule = fasaco::VelocitySchedule::parse(opt.schedule);
    opt.params.validate();

    fasaco::PheromoneField field(grid, opt.params.tau0);
    fasaco::Tour tour;
    const double t0 = fasaco::thread_cpu_seconds();
    if (opt.algo == "fasaco") {
        fasaco::Rng rng(opt.params.seed);
        tour = fasaco::run_fasaco(grid, opt.params, schedule, field, rng, start);
    } else if (opt.algo == "aco") {
        fasaco::Rng rng(opt.params.seed);
        tour = fasaco::run_aco(grid, opt.params, field, rng, start);
    } else if (opt.algo == "spiral-stc") {
        tour = fasaco::spiral_stc(grid, start);
    } else if (opt.algo == "zigzag") {
        tour = fasaco::zigzag(grid, start);
    } else {
        throw std::invalid_argument("--algo must be one of fasaco|aco|spiral-stc|zigzag");
    }
    const double elapsed = opt.no_timing ? 0.0 : fasaco::thread_cpu_seconds() - t0;
    const fasaco::CoverageReport report = fasaco::make_report(tour, grid, elapsed);

    std::printf("n_r=%d\n", report.n_r);
    std::printf("steps=%d\n", report.steps);
    std::printf("t_o=%.6f\n", report.t_o);
    std::printf("covered=%s\n", report.covered ? "true" : "false");

    if (!opt.out_json.empty()) {
        json j{{"map", src.id},
               {"algorithm", opt.algo},
               {"schedule", opt.algo == "fasaco" ? schedule.to_string() : "-"},
               {"seed", opt.params.seed},
               {"n_r", report.n_r},
               {"t_o_seconds", report.t_o},
               {"steps", report.steps},
               {"free_cells", report.free_cells},
               {"covered", report.covered}};
        write_file(opt.out_json, j.dump(2) + "\n");
    }
    if (!opt.out_svg.empty()) write_file(opt.out_svg, fasaco::render_svg(grid, tour));
    if (!opt.out_heatmap.empty())
        write_file(opt.out_heatmap, fasaco::render_pheromone_heatmap(field, grid));
    if (!opt.out_pheromone_csv.empty()) {
        std::ofstream out(opt.out_pheromone_csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + opt.out_pheromone_csv + "'");
        field.write_csv(out);
    }
    return report.covered ? 0 : 1;
}

struct BenchOptions {
    std::string config_path;
    std::vector<std::string> maps;
    std::vector<std::string> schedules;
    int repeats = 1;
    std::uint64_t seed = 0;
    fasaco::SolverParams params = fasaco::ExperimentConfig::default_params();
    bool table1 = false;
    std::string maps_dir = "maps";
    std::string out_csv, out_json, figures_dir;
    int jobs = 1;
    bool no_timing = false;
};

int run_bench(const BenchOptions& opt, const CLI::App& cmd) {
    BenchOptions eff = opt;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw std::runtime_error("cannot open config '" + opt.config_path + "'");
        json cfg = json::parse(in);
        // Flags override config: only fill from the file where the flag was
        // not given on the command line.
        auto unset = [&](const std::string& flag) { return cmd.count(flag) == 0; };
        if (cfg.contains("maps") && unset("--maps"))
            eff.maps = cfg["maps"].get<std::vector<std::string>>();
        if (cfg.contains("schedules") && unset("--schedules"))
            eff.schedules = cfg["schedules"].get<std::vector<std::string>>();
        if (cfg.contains("repeats") && unset("--repeats")) eff.repeats = cfg["repeats"];
        if (cfg.contains("seed") && unset("--seed")) eff.seed = cfg["seed"];
        if (cfg.contains("ants") && unset("--ants")) eff.params.ants = cfg["ants"];
        if (cfg.contains("iterations") && unset("--iterations"))
            eff.params.iterations = cfg["iterations"];
        if (cfg.contains("beta") && unset("--beta")) eff.params.beta = cfg["beta"];
        if (cfg.contains("q0") && unset("--q0")) eff.params.q0 = cfg["q0"];
        if (cfg.contains("alpha") && unset("--alpha")) eff.params.alpha = cfg["alpha"];
        if (cfg.contains("tau0") && unset("--tau0")) eff.params.tau0 = cfg["tau0"];
        if (cfg.contains("deposit_q") && unset("--deposit-q"))
            eff.params.deposit_quality = cfg["deposit_q"];
        if (cfg.contains("jobs") && unset("--jobs")) eff.jobs = cfg["jobs"];
        if (cfg.contains("no_timing") && unset("--no-timing")) eff.no_timing = cfg["no_timing"];
        if (cfg.contains("figures_dir") && unset("--figures-dir"))
            eff.figures_dir = cfg["figures_dir"];
        if (cfg.contains("out") && unset("--out")) eff.out_csv = cfg["out"];
        if (cfg.contains("out_json") && unset("--out-json")) eff.out_json = cfg["out_json"];
    }
    if (eff.table1 && eff.maps.empty()) {
        for (const char* name : {"office.txt", "simulated.txt", "basement.txt"})
            eff.maps.push_back(eff.maps_dir + "/" + name);
    }
    if (eff.maps.empty()) throw std::invalid_argument("bench: no maps (use --maps or --table1)");

    fasaco::ExperimentConfig config;
    for (const std::string& m : eff.maps) config.maps.push_back(fasaco::MapSource::parse(m));
    if (!eff.schedules.empty()) {
        config.schedules.clear();
        for (const std::string& s : eff.schedules)
            config.schedules.push_back(fasaco::VelocitySchedule::parse(s));
    }
    config.params = eff.params;
    config.params.seed = eff.seed;
    config.repeats = eff.repeats;
    config.base_seed = eff.seed;
    config.jobs = eff.jobs;
    config.no_timing = eff.no_timing;
    config.figures_dir = eff.figures_dir;

    const fasaco::ResultTable table = fasaco::run_experiment_suite(config);
    const std::string csv = table.to_csv();
    if (eff.out_csv.empty())
        std::fputs(csv.c_str(), stdout);
    else
        write_file(eff.out_csv, csv);
    if (!eff.out_json.empty()) write_file(eff.out_json, table.to_json().dump(2) + "\n");
    return table.all_covered() ? 0 : 1;
}

struct GenOptions {
    int rows = 20, cols = 20;
    double density = 0.15;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    const fasaco::OccupancyGrid grid =
        fasaco::generate_random_map(opt.rows, opt.cols, opt.density, opt.seed);
    const std::string text = fasaco::to_ascii(grid);
    if (opt.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(opt.out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage path planning on occupancy grids: FaSACO, ACO, Spiral-STC, ZigZag"};
    app.require_subcommand(1);

    PlanOptions plan_opt;
    CLI::App* plan = app.add_subcommand("plan", "Run one planner on one map");
    plan->add_option("--map", plan_opt.map, "Map file (.txt/.pgm) or gen:RxC:DENSITY:SEED")
        ->required();
    plan->add_option("--algo", plan_opt.algo, "fasaco|aco|spiral-stc|zigzag");
    plan->add_option("--schedule", plan_opt.schedule, "Velocity schedule (fasaco only)");
    plan->add_option("--ants", plan_opt.params.ants, "Colony size K");
    plan->add_option("--iterations", plan_opt.params.iterations, "Waves of ants per run");
    plan->add_option("--seed", plan_opt.params.seed, "RNG seed");
    plan->add_option("--beta", plan_opt.params.beta, "Heuristic exponent");
    plan->add_option("--q0", plan_opt.params.q0, "Exploit/explore threshold");
    plan->add_option("--alpha", plan_opt.params.alpha, "Pheromone learning rate");
    plan->add_option("--tau0", plan_opt.params.tau0, "Baseline pheromone level");
    plan->add_option("--deposit-q", plan_opt.params.deposit_quality,
                     "Global deposit strength Q (delta = Q / best tour length)");
    plan->add_option("--start", plan_opt.start, "Start cell as i,j (default: first free cell)");
    plan->add_flag("--no-timing", plan_opt.no_timing, "Report t_o as 0 for reproducible output");
    plan->add_option("--out-json", plan_opt.out_json, "Write the coverage report as JSON");
    plan->add_option("--out-svg", plan_opt.out_svg, "Render the tour as SVG");
    plan->add_option("--out-heatmap", plan_opt.out_heatmap, "Render the pheromone field as SVG");
    plan->add_option("--out-pheromone-csv", plan_opt.out_pheromone_csv,
                     "Dump the pheromone field as CSV");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Run the benchmark suite");
    bench->add_option("--config", bench_opt.config_path, "JSON config (flags override it)");
    bench->add_option("--maps", bench_opt.maps, "Map files or gen: specs");
    bench->add_option("--schedules", bench_opt.schedules,
                      "Velocity schedules (default: constant:1..8, increasing, decreasing)");
    bench->add_option("--repeats", bench_opt.repeats, "Seeded repeats per row");
    bench->add_option("--seed", bench_opt.seed, "Base seed for row-seed derivation");
    bench->add_option("--ants", bench_opt.params.ants, "Colony size K");
    bench->add_option("--iterations", bench_opt.params.iterations, "Waves of ants per run");
    bench->add_option("--beta", bench_opt.params.beta, "Heuristic exponent");
    bench->add_option("--q0", bench_opt.params.q0, "Exploit/explore threshold");
    bench->add_option("--alpha", bench_opt.params.alpha, "Pheromone learning rate");
    bench->add_option("--tau0", bench_opt.params.tau0, "Baseline pheromone level");
    bench->add_option("--deposit-q", bench_opt.params.deposit_quality,
                      "Global deposit strength Q (delta = Q / best tour length)");
    bench->add_flag("--table1", bench_opt.table1, "Benchmark grid on the shipped maps");
    bench->add_option("--maps-dir", bench_opt.maps_dir, "Directory of the shipped maps");
    bench->add_option("--out", bench_opt.out_csv, "CSV output path (default: stdout)");
    bench->add_option("--out-json", bench_opt.out_json, "JSON output path");
    bench->add_option("--figures-dir", bench_opt.figures_dir,
                      "Write best-tour SVGs per map and algorithm");
    bench->add_option("--jobs", bench_opt.jobs, "Worker threads for benchmark rows");
    bench->add_flag("--no-timing", bench_opt.no_timing, "Report t_o as 0 for reproducible output");

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random connected map");
    gen->add_option("--rows", gen_opt.rows, "Grid rows");
    gen->add_option("--cols", gen_opt.cols, "Grid columns");
    gen->add_option("--density", gen_opt.density, "Obstacle density in [0,1)");
    gen->add_option("--seed", gen_opt.seed, "RNG seed");
    gen->add_option("--out", gen_opt.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plan->parsed()) return run_plan(plan_opt);
        if (bench->parsed()) return run_bench(bench_opt, *bench);
        return run_gen(gen_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
