#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fasaco/colony.hpp"
#include "fasaco/grid.hpp"

namespace fasaco {

/// Random map generator: obstacles sampled independently per cell, then the
/// free set is made 4-connected by carving corridors between components. The
/// component holding the smallest column-major free cell absorbs the others,
/// nearest first. Deterministic given the seed.
inline OccupancyGrid generate_random_map(int rows, int cols, double obstacle_density,
                                         std::uint64_t seed) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("generate_random_map: dimensions must be positive");
    if (!(obstacle_density >= 0.0 && obstacle_density < 1.0))
        throw std::invalid_argument("generate_random_map: density must lie in [0,1)");

    const int n = rows * cols;
    Rng rng(seed);
    std::vector<double> probs(static_cast<size_t>(n));
    bool any_free = false;
    for (int attempt = 0; attempt < 8 && !any_free; ++attempt) {
        for (double& p : probs) {
            p = uniform01(rng) < obstacle_density ? 1.0 : 0.0;
            any_free |= p == 0.0;
        }
    }
    if (!any_free) throw std::runtime_error("generate_random_map: no free cells after retries");

    auto free_at = [&](int off) { return probs[static_cast<size_t>(off)] == 0.0; };
    const int doff[4] = {-cols, cols, -1, 1};
    auto for_neighbors = [&](int off, auto&& fn) {
        const int i = off / cols + 1, j = off % cols + 1;
        if (i > 1) fn(off + doff[0]);
        if (i < rows) fn(off + doff[1]);
        if (j > 1) fn(off + doff[2]);
        if (j < cols) fn(off + doff[3]);
    };
    // Offsets in column-major index order, so "first free cell found" below
    // always means the smallest column-major index.
    std::vector<int> scan_order;
    scan_order.reserve(static_cast<size_t>(n));
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) scan_order.push_back(i * cols + j);

    std::vector<std::int32_t> label(static_cast<size_t>(n));
    std::vector<std::int32_t> fifo;
    std::vector<std::int32_t> parent(static_cast<size_t>(n));

    while (true) {
        // Label free components; component 0 holds the smallest-index cell.
        std::fill(label.begin(), label.end(), -1);
        int components = 0;
        for (int off : scan_order) {
            if (!free_at(off) || label[off] >= 0) continue;
            fifo.clear();
            fifo.push_back(off);
            label[off] = components;
            for (size_t head = 0; head < fifo.size(); ++head) {
                for_neighbors(fifo[head], [&](int noff) {
                    if (free_at(noff) && label[noff] < 0) {
                        label[noff] = components;
                        fifo.push_back(noff);
                    }
                });
            }
            ++components;
        }
        if (components <= 1) break;

        // Multi-source BFS from component 0 across all cells (obstacles
        // passable); the first foreign free cell reached marks the corridor
        // to carve. Sources enqueue in column-major order, so ties resolve
        // deterministically.
        std::vector<std::int32_t> mark(static_cast<size_t>(n), 0);
        fifo.clear();
        for (int off : scan_order) {
            if (label[off] == 0) {
                mark[off] = 1;
                parent[off] = -1;
                fifo.push_back(off);
            }
        }
        int target = -1;
        for (size_t head = 0; head < fifo.size() && target < 0; ++head) {
            for_neighbors(fifo[head], [&](int noff) {
                if (target >= 0 || mark[noff]) return;
                mark[noff] = 1;
                parent[noff] = fifo[head];
                if (free_at(noff) && label[noff] > 0) {
                    target = noff;
                    return;
                }
                fifo.push_back(noff);
            });
        }
        for (int off = target; off >= 0; off = parent[off]) probs[static_cast<size_t>(off)] = 0.0;
    }
    return OccupancyGrid(rows, cols, probs);
}

}  // namespace fasaco
