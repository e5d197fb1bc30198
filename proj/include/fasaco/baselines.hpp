#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fasaco/grid.hpp"
#include "fasaco/search.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

namespace detail {

// Relative turns on the direction indices (Up, Down, Left, Right): clockwise,
// counter-clockwise, reverse.
inline constexpr int kRightOf[4] = {3, 2, 0, 1};
inline constexpr int kLeftOf[4] = {2, 3, 1, 0};
inline constexpr int reverse_dir(int d) { return d ^ 1; }

}  // namespace detail

/// Spiral-STC: decomposes the grid into 2x2 mega-cells anchored at (1,1) (odd
/// dimensions padded with blocked cells), spans the mega-cells holding at
/// least one reachable cell with a depth-first tree, and circumnavigates the
/// tree. Sub-cells that are padded, blocked, or unreachable are dropped from
/// the circumnavigation and the gaps re-joined by BFS shortest paths, which is
/// the only source of re-covered cells.
inline Tour spiral_stc(const OccupancyGrid& grid, CellCoord start) {
    if (!grid.in_bounds(start) || !grid.traversable(start))
        throw std::domain_error("spiral_stc: start cell is blocked or out of range");
    const int rows = grid.rows(), cols = grid.cols();
    const std::vector<std::uint8_t> reach = detail::reachable_set(grid, start);

    const int MR = (rows + 1) / 2, MC = (cols + 1) / 2;
    auto mega_at = [&](int si, int sj) { return ((si - 1) / 2) * MC + (sj - 1) / 2; };

    std::vector<std::uint8_t> interesting(static_cast<size_t>(MR) * MC, 0);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            if (reach[(i - 1) * cols + (j - 1)]) interesting[mega_at(i, j)] = 1;

    // Depth-first spanning tree over interesting mega-cells; fixed neighbor
    // order keeps the tree (and thus the tour) deterministic.
    std::vector<std::uint8_t> in_tree(interesting.size(), 0);
    std::vector<std::array<std::uint8_t, 4>> tree_edge(interesting.size(),
                                                       std::array<std::uint8_t, 4>{});
    struct Frame {
        int mega;
        int next_dir;
    };
    std::vector<Frame> stack;
    in_tree[mega_at(start.i, start.j)] = 1;
    stack.push_back({mega_at(start.i, start.j), 0});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next_dir == 4) {
            stack.pop_back();
            continue;
        }
        const int m = top.mega, d = top.next_dir++;
        const int NI = m / MC + detail::kDI[d], NJ = m % MC + detail::kDJ[d];
        if (NI < 0 || NI >= MR || NJ < 0 || NJ >= MC) continue;
        const int n = NI * MC + NJ;
        if (!interesting[n] || in_tree[n]) continue;
        in_tree[n] = 1;
        tree_edge[m][d] = 1;
        tree_edge[n][detail::reverse_dir(d)] = 1;
        stack.push_back({n, 0});
    }

    // Circumnavigation walk over the padded sub-cell grid. A move is legal
    // when it stays in tree mega-cells, crosses mega boundaries only along
    // tree edges, and never cuts across a tree edge inside a mega-cell. Those
    // rules leave every sub-cell exactly two legal moves, so the walk is the
    // tree's unique contour and visits each sub-cell of the tree once.
    const int R2 = 2 * MR, C2 = 2 * MC;
    auto legal = [&](int si, int sj, int d) {
        const int ni = si + detail::kDI[d], nj = sj + detail::kDJ[d];
        if (ni < 1 || ni > R2 || nj < 1 || nj > C2) return false;
        const int m = mega_at(si, sj), n = mega_at(ni, nj);
        if (!in_tree[n]) return false;
        if (m != n) return tree_edge[m][d] != 0;
        if (d <= 1)  // vertical move: cut by the tree edge on this column's side
            return !tree_edge[m][sj % 2 == 1 ? 2 : 3];
        return !tree_edge[m][si % 2 == 1 ? 0 : 1];
    };

    const int need = detail::reachable_count_from(reach);
    std::vector<std::pair<int, int>> walk{{start.i, start.j}};
    std::vector<std::uint8_t> seen(static_cast<size_t>(R2) * C2, 0);
    seen[(start.i - 1) * C2 + (start.j - 1)] = 1;
    int got = 1;
    int si = start.i, sj = start.j, h = 3;
    const size_t walk_limit = static_cast<size_t>(R2) * C2 + 1;
    while (got < need && walk.size() < walk_limit) {
        int chosen = -1;
        for (int t : {detail::kRightOf[h], h, detail::kLeftOf[h], detail::reverse_dir(h)}) {
            if (legal(si, sj, t)) {
                chosen = t;
                break;
            }
        }
        if (chosen < 0) break;
        si += detail::kDI[chosen];
        sj += detail::kDJ[chosen];
        h = chosen;
        walk.emplace_back(si, sj);
        std::uint8_t& mark = seen[(si - 1) * C2 + (sj - 1)];
        if (!mark) {
            mark = 1;
            if (si <= rows && sj <= cols && reach[(si - 1) * cols + (sj - 1)]) ++got;
        }
    }

    // Keep the reachable real cells in walk order; BFS-stitch the gaps left by
    // dropped cells.
    Tour tour;
    tour.cells.push_back(start);
    detail::SearchScratch ws;
    int prev_off = grid.offset(start);
    for (size_t k = 1; k < walk.size(); ++k) {
        auto [wi, wj] = walk[k];
        if (wi > rows || wj > cols) continue;
        const int off = (wi - 1) * cols + (wj - 1);
        if (!reach[off]) continue;
        CellCoord c{wi, wj};
        if (manhattan(grid.coord_at(prev_off), c) == 1) {
            tour.cells.push_back(c);
        } else {
            for (int o : detail::bfs_path(grid, prev_off, off, ws))
                tour.cells.push_back(grid.coord_at(o));
        }
        prev_off = off;
    }
    return tour;
}

enum class SweepOrientation { Horizontal, Vertical };

/// ZigZag: boustrophedon sweep. Horizontal orientation runs rows alternately
/// left-to-right and right-to-left, descending one row at each row end; when
/// the sweep is blocked it drops a row, and when that is blocked too it BFS-
/// detours to the nearest unvisited cell and resumes. Vertical orientation is
/// the transpose.
inline Tour zigzag(const OccupancyGrid& grid, CellCoord start,
                   SweepOrientation orientation = SweepOrientation::Horizontal) {
    if (!grid.in_bounds(start) || !grid.traversable(start))
        throw std::domain_error("zigzag: start cell is blocked or out of range");
    const Direction fwd =
        orientation == SweepOrientation::Horizontal ? Direction::Right : Direction::Down;
    const Direction bwd =
        orientation == SweepOrientation::Horizontal ? Direction::Left : Direction::Up;
    const Direction drop =
        orientation == SweepOrientation::Horizontal ? Direction::Down : Direction::Right;

    detail::SearchScratch ws;
    int remaining = detail::reachable_count(grid, start, ws) - 1;
    std::vector<std::uint8_t> visited(static_cast<size_t>(grid.size()), 0);
    visited[grid.offset(start)] = 1;
    Tour tour;
    tour.cells.push_back(start);
    CellCoord cur = start;
    bool forward = true;

    auto open = [&](CellCoord c) {
        return grid.in_bounds(c) && grid.traversable(c) && !visited[grid.offset(c)];
    };
    auto enter = [&](CellCoord c) {
        tour.cells.push_back(c);
        std::uint8_t& mark = visited[grid.offset(c)];
        if (!mark) {
            mark = 1;
            --remaining;
        }
        cur = c;
    };

    while (remaining > 0) {
        if (CellCoord ahead = step(cur, forward ? fwd : bwd); open(ahead)) {
            enter(ahead);
        } else if (CellCoord below = step(cur, drop); open(below)) {
            enter(below);
            forward = !forward;
        } else {
            auto path = detail::bfs_to_nearest_unvisited(grid, visited, grid.offset(cur), ws);
            if (path.empty()) break;
            for (int off : path) enter(grid.coord_at(off));
            forward = open(step(cur, fwd)) || !open(step(cur, bwd));
        }
    }
    return tour;
}

}  // namespace fasaco
