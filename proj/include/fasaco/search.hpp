#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fasaco/grid.hpp"

namespace fasaco::detail {

inline constexpr int kDI[4] = {-1, 1, 0, 0};
inline constexpr int kDJ[4] = {0, 0, -1, 1};

/// Scratch buffers for grid BFS, reused across calls via epoch stamping.
struct SearchScratch {
    std::vector<std::uint32_t> mark;
    std::vector<std::int32_t> parent;
    std::vector<std::int32_t> fifo;
    std::uint32_t epoch = 0;

    void ensure(size_t n) {
        if (mark.size() < n) {
            mark.assign(n, 0);
            parent.assign(n, -1);
        }
        fifo.clear();
    }
};

/// Number of traversable cells reachable from `start` (inclusive).
inline int reachable_count(const OccupancyGrid& grid, CellCoord start, SearchScratch& ws) {
    const int rows = grid.rows(), cols = grid.cols();
    ws.ensure(static_cast<size_t>(grid.size()));
    const std::uint32_t epoch = ++ws.epoch;
    const int doff[4] = {-cols, cols, -1, 1};
    int start_off = grid.offset(start);
    ws.mark[start_off] = epoch;
    ws.fifo.push_back(start_off);
    size_t head = 0;
    int count = 0;
    while (head < ws.fifo.size()) {
        int off = ws.fifo[head++];
        ++count;
        int i = off / cols + 1, j = off % cols + 1;
        for (int d = 0; d < 4; ++d) {
            int ni = i + kDI[d], nj = j + kDJ[d];
            if (ni < 1 || ni > rows || nj < 1 || nj > cols) continue;
            int noff = off + doff[d];
            if (!grid.traversable_at(noff) || ws.mark[noff] == epoch) continue;
            ws.mark[noff] = epoch;
            ws.fifo.push_back(noff);
        }
    }
    return count;
}

/// Flood fill: flags (as row-major offsets) every traversable cell reachable
/// from `start`, including `start` itself.
inline std::vector<std::uint8_t> reachable_set(const OccupancyGrid& grid, CellCoord start) {
    std::vector<std::uint8_t> out(static_cast<size_t>(grid.size()), 0);
    const int rows = grid.rows(), cols = grid.cols();
    const int doff[4] = {-cols, cols, -1, 1};
    std::vector<std::int32_t> fifo;
    int start_off = grid.offset(start);
    out[start_off] = 1;
    fifo.push_back(start_off);
    size_t head = 0;
    while (head < fifo.size()) {
        int off = fifo[head++];
        int i = off / cols + 1, j = off % cols + 1;
        for (int d = 0; d < 4; ++d) {
            int ni = i + kDI[d], nj = j + kDJ[d];
            if (ni < 1 || ni > rows || nj < 1 || nj > cols) continue;
            int noff = off + doff[d];
            if (!grid.traversable_at(noff) || out[noff]) continue;
            out[noff] = 1;
            fifo.push_back(noff);
        }
    }
    return out;
}

inline int reachable_count_from(const std::vector<std::uint8_t>& reach) {
    int n = 0;
    for (std::uint8_t f : reach) n += f;
    return n;
}

/// Breadth-first path (as offsets, start excluded) from `from_off` to the
/// nearest cell that is traversable but not flagged in `visited`. Ties among
/// equidistant targets break toward the smallest column-major cell index.
/// Returns an empty vector when no unvisited cell is reachable.
inline std::vector<std::int32_t> bfs_to_nearest_unvisited(const OccupancyGrid& grid,
                                                          const std::vector<std::uint8_t>& visited,
                                                          int from_off, SearchScratch& ws) {
    const int rows = grid.rows(), cols = grid.cols();
    ws.ensure(static_cast<size_t>(grid.size()));
    const std::uint32_t epoch = ++ws.epoch;
    const int doff[4] = {-cols, cols, -1, 1};
    ws.mark[from_off] = epoch;
    ws.parent[from_off] = -1;
    ws.fifo.push_back(from_off);
    size_t head = 0, level_end = 1;
    std::vector<std::int32_t> targets;

    auto column_major = [&](int off) {
        int i = off / cols + 1, j = off % cols + 1;
        return (j - 1) * rows + i;
    };

    while (head < ws.fifo.size()) {
        int off = ws.fifo[head++];
        int i = off / cols + 1, j = off % cols + 1;
        for (int d = 0; d < 4; ++d) {
            int ni = i + kDI[d], nj = j + kDJ[d];
            if (ni < 1 || ni > rows || nj < 1 || nj > cols) continue;
            int noff = off + doff[d];
            if (!grid.traversable_at(noff) || ws.mark[noff] == epoch) continue;
            ws.mark[noff] = epoch;
            ws.parent[noff] = off;
            ws.fifo.push_back(noff);
            if (!visited[static_cast<size_t>(noff)]) targets.push_back(noff);
        }
        if (head == level_end) {  // finished one BFS level
            if (!targets.empty()) {
                int best = targets[0];
                for (int t : targets)
                    if (column_major(t) < column_major(best)) best = t;
                std::vector<std::int32_t> path;
                for (int o = best; o != from_off; o = ws.parent[o]) path.push_back(o);
                std::reverse(path.begin(), path.end());
                return path;
            }
            level_end = ws.fifo.size();
        }
    }
    return {};
}

/// Breadth-first shortest path between two traversable cells (start excluded,
/// goal included). Expansion follows the fixed direction order, so the path is
/// deterministic. Returns empty when from == to; both must be connected.
inline std::vector<std::int32_t> bfs_path(const OccupancyGrid& grid, int from_off, int to_off,
                                          SearchScratch& ws) {
    if (from_off == to_off) return {};
    const int rows = grid.rows(), cols = grid.cols();
    ws.ensure(static_cast<size_t>(grid.size()));
    const std::uint32_t epoch = ++ws.epoch;
    const int doff[4] = {-cols, cols, -1, 1};
    ws.mark[from_off] = epoch;
    ws.parent[from_off] = -1;
    ws.fifo.push_back(from_off);
    size_t head = 0;
    while (head < ws.fifo.size()) {
        int off = ws.fifo[head++];
        int i = off / cols + 1, j = off % cols + 1;
        for (int d = 0; d < 4; ++d) {
            int ni = i + kDI[d], nj = j + kDJ[d];
            if (ni < 1 || ni > rows || nj < 1 || nj > cols) continue;
            int noff = off + doff[d];
            if (!grid.traversable_at(noff) || ws.mark[noff] == epoch) continue;
            ws.mark[noff] = epoch;
            ws.parent[noff] = off;
            if (noff == to_off) {
                std::vector<std::int32_t> path;
                for (int o = to_off; o != from_off; o = ws.parent[o]) path.push_back(o);
                std::reverse(path.begin(), path.end());
                return path;
            }
            ws.fifo.push_back(noff);
        }
    }
    return {};
}

}  // namespace fasaco::detail
