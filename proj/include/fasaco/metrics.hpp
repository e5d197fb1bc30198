#pragma once

#include <algorithm>
#include <ctime>
#include <utility>
#include <vector>

#include "fasaco/grid.hpp"
#include "fasaco/search.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

/// Evaluation record for one planning run.
struct CoverageReport {
    int n_r = 0;         // distinct cells covered two or more times
    double t_o = 0.0;    // CPU seconds spent planning
    int steps = 0;       // tour unit-step count
    int free_cells = 0;  // reachable free cells from the tour's first cell
    bool covered = false;
};

/// Count of distinct cells appearing two or more times in the tour.
inline int recovered_cells(const Tour& tour) {
    std::vector<CellCoord> cells = tour.cells;
    std::sort(cells.begin(), cells.end());
    int count = 0;
    for (size_t k = 0; k < cells.size();) {
        size_t e = k + 1;
        while (e < cells.size() && cells[e] == cells[k]) ++e;
        if (e - k >= 2) ++count;
        k = e;
    }
    return count;
}

/// True iff the set of distinct tour cells equals the set of traversable
/// cells reachable from the tour's first cell.
inline bool coverage_complete(const Tour& tour, const OccupancyGrid& grid) {
    if (tour.empty()) return false;
    std::vector<std::uint8_t> reach = detail::reachable_set(grid, tour.cells.front());
    std::vector<std::uint8_t> seen(static_cast<size_t>(grid.size()), 0);
    for (CellCoord c : tour.cells) {
        if (!grid.in_bounds(c)) return false;
        seen[grid.offset(c)] = 1;
    }
    return seen == reach;
}

/// CPU time consumed by the calling thread, in seconds.
inline double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

/// CPU seconds consumed by one invocation of `f`, excluding any work outside
/// the call. The callable's result is discarded; time a result-bearing call
/// with thread_cpu_seconds() directly.
template <typename F>
inline double measure_cpu_time(F&& f) {
    const double t0 = thread_cpu_seconds();
    std::forward<F>(f)();
    return thread_cpu_seconds() - t0;
}

/// Assembles the evaluation record for a finished tour. `t_o` is the planning
/// time measured by the caller (map parsing and rendering excluded).
inline CoverageReport make_report(const Tour& tour, const OccupancyGrid& grid, double t_o = 0.0) {
    CoverageReport report;
    report.t_o = t_o;
    if (tour.empty()) return report;
    report.n_r = recovered_cells(tour);
    report.steps = tour.steps();
    report.free_cells =
        detail::reachable_count_from(detail::reachable_set(grid, tour.cells.front()));
    report.covered = coverage_complete(tour, grid);
    return report;
}

}  // namespace fasaco
