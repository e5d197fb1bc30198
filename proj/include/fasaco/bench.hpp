#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fasaco/baselines.hpp"
#include "fasaco/colony.hpp"
#include "fasaco/fasaco.hpp"
#include "fasaco/grid.hpp"
#include "fasaco/mapgen.hpp"
#include "fasaco/metrics.hpp"
#include "fasaco/render.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

/// Where a benchmark map comes from: a file on disk or the seeded generator
/// (spec form `gen:RxC:DENSITY:SEED`).
struct MapSource {
    enum class Kind { File, Generated };

    Kind kind = Kind::File;
    std::string id;    // row label: file stem, or the full gen: spec
    std::string path;  // File only
    int rows = 0, cols = 0;
    double density = 0.0;
    std::uint64_t seed = 0;

    static MapSource parse(const std::string& spec) {
        MapSource src;
        if (spec.rfind("gen:", 0) == 0) {
            src.kind = Kind::Generated;
            src.id = spec;
            std::string_view rest(spec);
            rest.remove_prefix(4);
            const size_t x = rest.find('x');
            const size_t c1 = rest.find(':');
            const size_t c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
            if (x == std::string_view::npos || c1 == std::string_view::npos ||
                c2 == std::string_view::npos || x > c1)
                throw std::invalid_argument("MapSource: expected gen:RxC:DENSITY:SEED, got '" +
                                            spec + "'");
            try {
                src.rows = std::stoi(std::string(rest.substr(0, x)));
                src.cols = std::stoi(std::string(rest.substr(x + 1, c1 - x - 1)));
                src.density = std::stod(std::string(rest.substr(c1 + 1, c2 - c1 - 1)));
                src.seed = std::stoull(std::string(rest.substr(c2 + 1)));
            } catch (const std::exception&) {
                throw std::invalid_argument("MapSource: bad number in '" + spec + "'");
            }
        } else {
            src.kind = Kind::File;
            src.path = spec;
            const size_t slash = spec.find_last_of('/');
            std::string stem = slash == std::string::npos ? spec : spec.substr(slash + 1);
            const size_t dot = stem.find_last_of('.');
            if (dot != std::string::npos && dot > 0) stem.resize(dot);
            src.id = stem;
        }
        return src;
    }

    OccupancyGrid load() const {
        if (kind == Kind::Generated) return generate_random_map(rows, cols, density, seed);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("MapSource: cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0)
            return parse_pgm_map(text);
        return parse_ascii_map(text);
    }
};

/// Full benchmark description: which maps, which schedules, solver parameters,
/// and how many seeded repeats per row.
struct ExperimentConfig {
    std::vector<MapSource> maps;
    std::vector<VelocitySchedule> schedules = default_schedules();
    SolverParams params = default_params();
    int repeats = 1;
    std::uint64_t base_seed = 0;
    int jobs = 1;
    bool no_timing = false;     // report t_o = 0 so outputs are byte-reproducible
    std::string figures_dir;    // empty: no figures

    /// The ten schedules of the paper's experiment groups: constant velocities
    /// 1..8, increasing 1..8, decreasing 8..1.
    static std::vector<VelocitySchedule> default_schedules() {
        std::vector<VelocitySchedule> out;
        for (int v = 1; v <= 8; ++v) out.push_back(VelocitySchedule::constant(v));
        out.push_back(VelocitySchedule::increasing(1, 8));
        out.push_back(VelocitySchedule::decreasing(8, 1));
        return out;
    }

    static SolverParams default_params() {
        SolverParams p;
        p.ants = 1000;
        return p;
    }

    void validate() const {
        if (maps.empty()) throw std::invalid_argument("ExperimentConfig: no maps");
        if (schedules.empty()) throw std::invalid_argument("ExperimentConfig: no schedules");
        if (repeats < 1) throw std::invalid_argument("ExperimentConfig: repeats must be >= 1");
        params.validate();
    }
};

struct ResultRow {
    std::string map;
    std::string algorithm;  // fasaco | aco | spiral-stc | zigzag
    std::string schedule;   // canonical schedule string; "-" for non-fasaco rows
    std::uint64_t seed = 0;
    CoverageReport report;
};

struct AggregateRow {
    std::string map;
    std::string algorithm;
    std::string schedule;
    int runs = 0;
    double median_n_r = 0.0, iqr_n_r = 0.0;
    double median_t_o = 0.0, iqr_t_o = 0.0;
    bool all_covered = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline std::string sanitize_filename(std::string_view s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '-';
    return out;
}

}  // namespace detail

/// Row seed derivation: a fixed 64-bit mix of base seed, map id, schedule id,
/// and repeat index, so extending the config never perturbs existing rows.
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view map_id,
                              std::string_view schedule_id, int repeat) {
    std::uint64_t h = detail::splitmix64(base ^ detail::fnv1a(map_id));
    h = detail::splitmix64(h ^ detail::fnv1a(schedule_id));
    return detail::splitmix64(h ^ static_cast<std::uint64_t>(repeat));
}

struct ResultTable {
    std::vector<ResultRow> rows;
    std::vector<AggregateRow> aggregates;

    bool all_covered() const {
        for (const ResultRow& r : rows)
            if (!r.report.covered) return false;
        return true;
    }

    std::string to_csv() const {
        std::string out = "map,algorithm,schedule,seed,n_r,t_o_seconds,steps,covered\n";
        char buf[64];
        for (const ResultRow& r : rows) {
            std::snprintf(buf, sizeof buf, "%.6f", r.report.t_o);
            out += r.map + ',' + r.algorithm + ',' + r.schedule + ',' + std::to_string(r.seed) +
                   ',' + std::to_string(r.report.n_r) + ',' + buf + ',' +
                   std::to_string(r.report.steps) + ',' + (r.report.covered ? "true" : "false") +
                   '\n';
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json maps = nlohmann::json::object();
        for (const ResultRow& r : rows) {
            maps[r.map]["runs"].push_back({{"algorithm", r.algorithm},
                                           {"schedule", r.schedule},
                                           {"seed", r.seed},
                                           {"n_r", r.report.n_r},
                                           {"t_o_seconds", r.report.t_o},
                                           {"steps", r.report.steps},
                                           {"free_cells", r.report.free_cells},
                                           {"covered", r.report.covered}});
        }
        for (const AggregateRow& a : aggregates) {
            maps[a.map]["aggregates"].push_back({{"algorithm", a.algorithm},
                                                 {"schedule", a.schedule},
                                                 {"runs", a.runs},
                                                 {"median_n_r", a.median_n_r},
                                                 {"iqr_n_r", a.iqr_n_r},
                                                 {"median_t_o_seconds", a.median_t_o},
                                                 {"iqr_t_o_seconds", a.iqr_t_o},
                                                 {"all_covered", a.all_covered}});
        }
        return nlohmann::json{{"maps", maps}};
    }
};

namespace detail {

struct BenchTask {
    int map_idx = 0;
    int kind = 0;  // 0 fasaco, 1 aco, 2 spiral-stc, 3 zigzag
    int schedule_idx = 0;
    std::uint64_t seed = 0;
};

}  // namespace detail

/// Runs the full grid of experiments: per map, every schedule x repeat for
/// FaSACO, `repeats` ACO runs, and one run of each deterministic baseline.
/// Rows execute independently (optionally across `jobs` threads, timing each
/// row by its own thread's CPU clock) and land in a fixed order, so the table
/// is reproducible for a given config.
inline ResultTable run_experiment_suite(const ExperimentConfig& config) {
    config.validate();
    std::vector<OccupancyGrid> grids;
    std::vector<CellCoord> starts;
    grids.reserve(config.maps.size());
    for (const MapSource& src : config.maps) {
        grids.push_back(src.load());
        starts.push_back(default_start(grids.back()));
    }

    std::vector<detail::BenchTask> tasks;
    ResultTable table;
    for (size_t m = 0; m < config.maps.size(); ++m) {
        const std::string& id = config.maps[m].id;
        for (size_t s = 0; s < config.schedules.size(); ++s) {
            const std::string label = config.schedules[s].to_string();
            for (int r = 0; r < config.repeats; ++r) {
                tasks.push_back({static_cast<int>(m), 0, static_cast<int>(s),
                                 mix_seed(config.base_seed, id, "fasaco:" + label, r)});
                table.rows.push_back({id, "fasaco", label, tasks.back().seed, {}});
            }
        }
        for (int r = 0; r < config.repeats; ++r) {
            tasks.push_back({static_cast<int>(m), 1, 0, mix_seed(config.base_seed, id, "aco", r)});
            table.rows.push_back({id, "aco", "-", tasks.back().seed, {}});
        }
        tasks.push_back({static_cast<int>(m), 2, 0, 0});
        table.rows.push_back({id, "spiral-stc", "-", 0, {}});
        tasks.push_back({static_cast<int>(m), 3, 0, 0});
        table.rows.push_back({id, "zigzag", "-", 0, {}});
    }

    const bool keep_tours = !config.figures_dir.empty();
    std::vector<Tour> tours(keep_tours ? tasks.size() : 0);

    auto run_task = [&](size_t idx) {
        const detail::BenchTask& task = tasks[idx];
        const OccupancyGrid& grid = grids[task.map_idx];
        const CellCoord start = starts[task.map_idx];
        Tour tour;
        const double t0 = thread_cpu_seconds();
        switch (task.kind) {
            case 0: {
                Rng rng(task.seed);
                tour = run_fasaco(grid, config.params, config.schedules[task.schedule_idx], rng,
                                  start);
                break;
            }
            case 1: {
                Rng rng(task.seed);
                tour = run_aco(grid, config.params, rng, start);
                break;
            }
            case 2: tour = spiral_stc(grid, start); break;
            default: tour = zigzag(grid, start); break;
        }
        const double elapsed = thread_cpu_seconds() - t0;
        table.rows[idx].report = make_report(tour, grid, config.no_timing ? 0.0 : elapsed);
        if (keep_tours) tours[idx] = std::move(tour);
    };

    if (config.jobs > 1) {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t idx = next.fetch_add(1); idx < tasks.size(); idx = next.fetch_add(1))
                run_task(idx);
        };
        std::vector<std::thread> pool;
        const int n = std::min<int>(config.jobs, static_cast<int>(tasks.size()));
        pool.reserve(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    } else {
        for (size_t idx = 0; idx < tasks.size(); ++idx) run_task(idx);
    }

    // Aggregate: one row per (map, algorithm/schedule) group, medians and IQR
    // across the group's repeats.
    size_t begin = 0;
    while (begin < table.rows.size()) {
        size_t end = begin + 1;
        while (end < table.rows.size() && table.rows[end].map == table.rows[begin].map &&
               table.rows[end].algorithm == table.rows[begin].algorithm &&
               table.rows[end].schedule == table.rows[begin].schedule)
            ++end;
        std::vector<double> nr, to;
        bool all_cov = true;
        for (size_t k = begin; k < end; ++k) {
            nr.push_back(table.rows[k].report.n_r);
            to.push_back(table.rows[k].report.t_o);
            all_cov = all_cov && table.rows[k].report.covered;
        }
        std::sort(nr.begin(), nr.end());
        std::sort(to.begin(), to.end());
        table.aggregates.push_back({table.rows[begin].map, table.rows[begin].algorithm,
                                    table.rows[begin].schedule, static_cast<int>(end - begin),
                                    detail::quantile(nr, 0.5),
                                    detail::quantile(nr, 0.75) - detail::quantile(nr, 0.25),
                                    detail::quantile(to, 0.5),
                                    detail::quantile(to, 0.75) - detail::quantile(to, 0.25),
                                    all_cov});
        begin = end;
    }

    if (keep_tours) {
        namespace fs = std::filesystem;
        fs::create_directories(config.figures_dir);
        // Best tour per (map, algorithm): fewest steps, earliest row on ties.
        for (size_t m = 0; m < config.maps.size(); ++m) {
            for (const std::string& algo : {std::string("fasaco"), std::string("aco"),
                                            std::string("spiral-stc"), std::string("zigzag")}) {
                int best = -1;
                for (size_t k = 0; k < tasks.size(); ++k) {
                    if (tasks[k].map_idx != static_cast<int>(m)) continue;
                    if (table.rows[k].algorithm != algo) continue;
                    if (best < 0 || tours[k].steps() < tours[best].steps())
                        best = static_cast<int>(k);
                }
                if (best < 0) continue;
                const std::string name = detail::sanitize_filename(config.maps[m].id) + "_" +
                                         algo + ".svg";
                std::ofstream out(fs::path(config.figures_dir) / name, std::ios::binary);
                out << render_svg(grids[m], tours[best]);
            }
        }
    }
    return table;
}

}  // namespace fasaco
