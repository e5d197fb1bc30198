#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "fasaco/grid.hpp"
#include "fasaco/pheromone.hpp"
#include "fasaco/search.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

using Rng = std::mt19937_64;

/// Uniform draw in [0,1) with 53 random bits; keeps the draw sequence
/// independent of the standard library's distribution implementation.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct SolverParams {
    double beta = 2.0;   // relative importance of closeness
    double q0 = 0.9;     // exploit/explore threshold
    double alpha = 0.1;  // pheromone learning rate (local and global updates)
    double tau0 = 1.0;   // baseline pheromone level
    // Deposit strength Q of the global update's delta = Q / L_best. Must be
    // large against tau0 * L_best, or deposits drag best-tour edges BELOW the
    // baseline and repel instead of attract.
    double deposit_quality = 10000.0;
    int ants = 1000;
    int iterations = 1;  // waves of ants per run; each wave ends with a deposit
    std::uint64_t seed = 0;

    // Test instrumentation: freeze the field (skip local updates) so ants can
    // be compared in isolation. Never set by the CLI.
    bool freeze_pheromone = false;

    void validate() const {
        if (!(beta >= 0.0)) throw std::invalid_argument("SolverParams: beta must be >= 0");
        if (!(q0 >= 0.0 && q0 <= 1.0)) throw std::invalid_argument("SolverParams: q0 must lie in [0,1]");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("SolverParams: alpha must lie in (0,1)");
        if (!(tau0 > 0.0)) throw std::invalid_argument("SolverParams: tau0 must be positive");
        if (!(deposit_quality > 0.0))
            throw std::invalid_argument("SolverParams: deposit quality must be positive");
        if (ants < 1) throw std::invalid_argument("SolverParams: ant count must be >= 1");
        if (iterations < 1) throw std::invalid_argument("SolverParams: iterations must be >= 1");
    }
};

/// One ant's construction state: where it is, what it has covered so far, the
/// tour under construction, and its velocity (1 for classic ACO).
struct AntState {
    CellCoord current;
    std::vector<std::uint8_t> visited;  // row-major offsets, 1 = covered
    Tour tour;
    int velocity = 1;

    AntState(const OccupancyGrid& grid, CellCoord start, int velocity_ = 1)
        : current(start), visited(static_cast<size_t>(grid.size()), 0), velocity(velocity_) {
        if (velocity < 1) throw std::invalid_argument("AntState: velocity must be >= 1");
        if (!grid.traversable(start)) throw std::domain_error("AntState: start cell is blocked");
        visited[static_cast<size_t>(grid.offset(start))] = 1;
        tour.cells.push_back(start);
    }
};

/// Closeness heuristic eta = 1 / manhattan(from, to); always 1 for unit moves.
inline double heuristic(CellCoord from, CellCoord to) {
    int d = manhattan(from, to);
    if (d == 0) throw std::domain_error("heuristic: cells coincide");
    return 1.0 / d;
}

namespace detail {

/// Per-direction probe result for one candidate move.
struct DirProbe {
    int extent = 0;       // move length: farthest unvisited landing within reach
    int landing = -1;     // row-major offset of the cell at `extent`
    CellCoord landing_coord{};
    bool candidate = false;  // some unvisited landing exists within the clear run
    double weight = 0.0;     // tau(first edge) * eta(landing)^beta
};

/// Powers (1/d)^beta for landing distances d = 1..v, computed once per tour.
struct EtaTable {
    std::vector<double> pow_of;  // index by distance; [0] unused

    void rebuild(int v, double beta) {
        pow_of.resize(static_cast<size_t>(v) + 1);
        for (int d = 1; d <= v; ++d) pow_of[d] = std::pow(1.0 / d, beta);
    }
};

/// Probes all four directions from `at` for an ant of velocity `v` and scores
/// the feasible ones. The ant advances through the clear run of up to `v`
/// cells in each direction; the landing cell is the farthest not-yet-visited
/// cell in that run (a direction with no unvisited cell in reach is not a
/// candidate), so one decision covers up to `v` fresh cells. tau is read from
/// the first unit edge of the direction.
inline std::array<DirProbe, 4> probe_directions(const OccupancyGrid& grid,
                                                const PheromoneField& field,
                                                const std::vector<std::uint8_t>& visited,
                                                CellCoord at, int v, const EtaTable& eta) {
    std::array<DirProbe, 4> out;
    const int rows = grid.rows(), cols = grid.cols();
    const int at_off = (at.i - 1) * cols + (at.j - 1);
    const int doff[4] = {-cols, cols, -1, 1};
    for (int d = 0; d < 4; ++d) {
        DirProbe& p = out[d];
        int ci = at.i, cj = at.j, coff = at_off;
        for (int k = 1; k <= v; ++k) {
            int ni = ci + kDI[d], nj = cj + kDJ[d];
            if (ni < 1 || ni > rows || nj < 1 || nj > cols) break;
            int noff = coff + doff[d];
            if (!grid.traversable_at(noff)) break;
            ci = ni;
            cj = nj;
            coff = noff;
            if (!visited[static_cast<size_t>(noff)]) {
                p.extent = k;
                p.landing = noff;
                p.landing_coord = {ci, cj};
            }
        }
        if (p.extent >= 1) {
            p.candidate = true;
            p.weight = field.tau_at(at_off, d) * eta.pow_of[p.extent];
        }
    }
    return out;
}

/// Pseudo-random-proportional choice over probed directions. Returns the
/// direction index, or -1 when no candidate exists. Draws one uniform for q;
/// the sampling branch draws a second one for the roulette wheel.
inline int choose_direction(const std::array<DirProbe, 4>& probes, double q0, Rng& rng) {
    double total = 0.0;
    bool any = false;
    for (const DirProbe& p : probes) {
        if (p.candidate) {
            total += p.weight;
            any = true;
        }
    }
    if (!any) return -1;

    double q = uniform01(rng);
    if (q <= q0) {
        // Exploit: argmax of weight, ties broken by direction order.
        int best = -1;
        double best_w = -1.0;
        for (int d = 0; d < 4; ++d) {
            if (probes[d].candidate && probes[d].weight > best_w) {
                best = d;
                best_w = probes[d].weight;
            }
        }
        return best;
    }
    // Explore: roulette wheel proportional to the weights.
    double r = uniform01(rng) * total;
    double cum = 0.0;
    int last = -1;
    for (int d = 0; d < 4; ++d) {
        if (!probes[d].candidate) continue;
        cum += probes[d].weight;
        last = d;
        if (r < cum) return d;
    }
    return last;  // numeric slack: r landed on the top edge
}

}  // namespace detail

/// Transition distribution of Eq.-6 form over the four candidate directions.
/// Probabilities follow the fixed direction order; infeasible or visited
/// landings get 0. An all-zero distribution signals a dead end.
struct TransitionDistribution {
    std::array<double, 4> prob{};
    std::array<CellCoord, 4> landing{};
    std::array<bool, 4> candidate{};

    bool empty() const { return !(candidate[0] || candidate[1] || candidate[2] || candidate[3]); }
};

inline TransitionDistribution transition_probabilities(const OccupancyGrid& grid,
                                                       const PheromoneField& field,
                                                       const AntState& state,
                                                       const SolverParams& params) {
    detail::EtaTable eta;
    eta.rebuild(state.velocity, params.beta);
    auto probes = detail::probe_directions(grid, field, state.visited, state.current,
                                           state.velocity, eta);
    TransitionDistribution dist;
    double total = 0.0;
    for (int d = 0; d < 4; ++d) {
        if (probes[d].candidate) {
            dist.candidate[d] = true;
            dist.landing[d] = probes[d].landing_coord;
            total += probes[d].weight;
        }
    }
    if (total > 0.0)
        for (int d = 0; d < 4; ++d)
            if (dist.candidate[d]) dist.prob[d] = probes[d].weight / total;
    return dist;
}

/// One application of the pseudo-random-proportional rule: with probability q0
/// take the argmax of tau * eta^beta over unvisited candidates (ties broken by
/// direction order), otherwise sample from the transition distribution.
/// Returns the chosen landing cell, or nullopt at a dead end.
inline std::optional<CellCoord> select_next(const OccupancyGrid& grid, const PheromoneField& field,
                                            const AntState& state, const SolverParams& params,
                                            Rng& rng) {
    detail::EtaTable eta;
    eta.rebuild(state.velocity, params.beta);
    auto probes = detail::probe_directions(grid, field, state.visited, state.current,
                                           state.velocity, eta);
    int d = detail::choose_direction(probes, params.q0, rng);
    if (d < 0) return std::nullopt;
    return probes[d].landing_coord;
}

/// Dead-end recovery: walks the ant along the breadth-first shortest path to
/// the nearest unvisited traversable cell, appending every entered cell to the
/// tour (re-covering the already visited ones). Returns the path taken, empty
/// when every reachable cell is already covered.
inline std::vector<CellCoord> escape_dead_end(const OccupancyGrid& grid, AntState& state) {
    detail::SearchScratch ws;
    auto path_off = detail::bfs_to_nearest_unvisited(grid, state.visited,
                                                     grid.offset(state.current), ws);
    std::vector<CellCoord> path;
    path.reserve(path_off.size());
    for (size_t k = 0; k < path_off.size(); ++k) {
        int off = path_off[k];
        // Only the target can be new: any nearer unvisited cell would have
        // been the BFS target instead.
        assert(k + 1 == path_off.size() || state.visited[static_cast<size_t>(off)]);
        CellCoord c = grid.coord_at(off);
        path.push_back(c);
        state.visited[static_cast<size_t>(off)] = 1;
        state.tour.cells.push_back(c);
    }
    if (!path.empty()) state.current = path.back();
    return path;
}

namespace detail {

/// Tour construction shared by the ACO and FaSACO drivers. `ws` carries reused
/// BFS scratch; `reachable` is the size of the start cell's traversable
/// component (computed here when negative).
inline Tour construct_tour_impl(const OccupancyGrid& grid, PheromoneField& field,
                                const SolverParams& params, Rng& rng, CellCoord start,
                                int velocity, SearchScratch& ws, int reachable = -1) {
    if (!grid.in_bounds(start) || !grid.traversable(start))
        throw std::domain_error("construct_tour: start cell is blocked or out of range");
    if (velocity < 1) throw std::invalid_argument("construct_tour: velocity must be >= 1");
    if (reachable < 0) reachable = reachable_count(grid, start, ws);

    const int cols = grid.cols();
    const int doff[4] = {-cols, cols, -1, 1};
    AntState st(grid, start, velocity);
    st.tour.cells.reserve(static_cast<size_t>(reachable) + reachable / 4 + 8);
    int remaining = reachable - 1;
    int cur_off = grid.offset(start);
    EtaTable eta;
    eta.rebuild(velocity, params.beta);

    while (remaining > 0) {
        auto probes = probe_directions(grid, field, st.visited, st.current, velocity, eta);
        int d = choose_direction(probes, params.q0, rng);
        if (d >= 0) {
            // Enter every cell along the move; each unit edge gets the local
            // pheromone update.
            for (int k = 0; k < probes[d].extent; ++k) {
                if (!params.freeze_pheromone)
                    field.local_update_at(field.slot_of(cur_off, d), params.alpha);
                cur_off += doff[d];
                st.current = step(st.current, static_cast<Direction>(d));
                st.tour.cells.push_back(st.current);
                if (!st.visited[static_cast<size_t>(cur_off)]) {
                    st.visited[static_cast<size_t>(cur_off)] = 1;
                    --remaining;
                }
            }
        } else {
            auto path_off = bfs_to_nearest_unvisited(grid, st.visited, cur_off, ws);
            if (path_off.empty()) break;  // nothing reachable is left
            for (int off : path_off) {
                if (!params.freeze_pheromone) {
                    int dir = edge_direction(grid.coord_at(cur_off), grid.coord_at(off));
                    field.local_update_at(field.slot_of(cur_off, dir), params.alpha);
                }
                cur_off = off;
                st.current = grid.coord_at(off);
                st.tour.cells.push_back(st.current);
                if (!st.visited[static_cast<size_t>(off)]) {
                    st.visited[static_cast<size_t>(off)] = 1;
                    --remaining;
                }
            }
        }
    }
    return std::move(st.tour);
}

}  // namespace detail

/// Builds one complete coverage tour from `start` at the given velocity,
/// applying the local pheromone update to every traversed unit edge.
inline Tour construct_tour(const OccupancyGrid& grid, PheromoneField& field,
                           const SolverParams& params, Rng& rng, CellCoord start,
                           int velocity = 1) {
    params.validate();
    detail::SearchScratch ws;
    return detail::construct_tour_impl(grid, field, params, rng, start, velocity, ws);
}

/// Start cell policy: (1,1) when traversable, otherwise the traversable cell
/// with the smallest column-major index.
inline CellCoord default_start(const OccupancyGrid& grid) {
    if (grid.traversable({1, 1})) return {1, 1};
    for (int u = 1; u <= grid.size(); ++u) {
        CellCoord c = grid.coord_of_index(u);
        if (grid.traversable(c)) return c;
    }
    throw std::domain_error("default_start: grid has no traversable cell");
}

/// Classic ACO on an externally owned field: `ants` velocity-1 ants per wave,
/// the best-so-far tour receiving the global deposit after each wave. Returns
/// the best (fewest-steps) tour found; fully deterministic given the RNG state.
inline Tour run_aco(const OccupancyGrid& grid, const SolverParams& params, PheromoneField& field,
                    Rng& rng, CellCoord start) {
    params.validate();
    detail::SearchScratch ws;
    const int reachable = detail::reachable_count(grid, start, ws);
    Tour best;
    for (int it = 0; it < params.iterations; ++it) {
        for (int k = 0; k < params.ants; ++k) {
            Tour t = detail::construct_tour_impl(grid, field, params, rng, start, 1, ws, reachable);
            if (best.empty() || t.steps() < best.steps()) best = std::move(t);
        }
        field.global_deposit(best, params.alpha, params.deposit_quality);
    }
    return best;
}

inline Tour run_aco(const OccupancyGrid& grid, const SolverParams& params, Rng& rng,
                    CellCoord start) {
    PheromoneField field(grid, params.tau0);
    return run_aco(grid, params, field, rng, start);
}

}  // namespace fasaco
