#pragma once

#include <ostream>
#include <stdexcept>
#include <vector>

#include "fasaco/grid.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

namespace detail {

/// Direction of the unit edge from -> to, or -1 if the cells are not 4-adjacent.
inline int edge_direction(CellCoord from, CellCoord to) {
    int di = to.i - from.i;
    int dj = to.j - from.j;
    if (dj == 0 && di == -1) return static_cast<int>(Direction::Up);
    if (dj == 0 && di == 1) return static_cast<int>(Direction::Down);
    if (di == 0 && dj == -1) return static_cast<int>(Direction::Left);
    if (di == 0 && dj == 1) return static_cast<int>(Direction::Right);
    return -1;
}

}  // namespace detail

/// Pheromone intensities on directed unit edges between 4-adjacent cells: four
/// entries per cell, one per outgoing direction. Entries start at tau0 and stay
/// strictly positive under the update rules. Edges leading off-map or into
/// blocked cells carry entries too; the planners simply never select them.
class PheromoneField {
  public:
    PheromoneField(int rows, int cols, double tau0)
        : rows_(rows), cols_(cols), tau0_(tau0) {
        if (rows_ < 1 || cols_ < 1)
            throw std::invalid_argument("PheromoneField: dimensions must be positive");
        if (tau0_ <= 0.0) throw std::invalid_argument("PheromoneField: tau0 must be positive");
        tau_.assign(static_cast<size_t>(rows_) * cols_ * 4, tau0_);
    }

    PheromoneField(const OccupancyGrid& grid, double tau0)
        : PheromoneField(grid.rows(), grid.cols(), tau0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double tau0() const { return tau0_; }

    /// Intensity on the directed edge from -> to. The cells must be 4-adjacent.
    double tau(CellCoord from, CellCoord to) const { return tau_[edge_slot(from, to)]; }

    /// Overwrites one directed edge (test and tooling hook; the planners only
    /// ever call local_update / global_deposit).
    void set(CellCoord from, CellCoord to, double value) {
        if (value <= 0.0) throw std::invalid_argument("PheromoneField: intensity must be positive");
        tau_[edge_slot(from, to)] = value;
    }

    void fill(double value) {
        if (value <= 0.0) throw std::invalid_argument("PheromoneField: intensity must be positive");
        tau_.assign(tau_.size(), value);
    }

    /// Local update on one directed edge: tau <- (1-alpha)*tau + alpha*tau0.
    /// Returns the updated intensity.
    double local_update(CellCoord from, CellCoord to, double alpha) {
        check_alpha(alpha);
        return local_update_at(edge_slot(from, to), alpha);
    }

    /// End-of-wave deposit along a tour: every directed edge the tour traverses
    /// gets phi <- (1-alpha)*phi + alpha*(quality / steps), once per traversal.
    /// Edges not on the tour are untouched.
    void global_deposit(const Tour& tour, double alpha, double quality = 1.0) {
        check_alpha(alpha);
        if (tour.empty()) throw std::domain_error("global_deposit: empty tour");
        if (quality <= 0.0) throw std::invalid_argument("global_deposit: quality must be positive");
        if (tour.steps() == 0) return;  // single-cell tour traverses no edges
        const double delta = quality / tour.steps();
        for (size_t k = 0; k + 1 < tour.cells.size(); ++k) {
            size_t slot = edge_slot(tour.cells[k], tour.cells[k + 1]);
            tau_[slot] = (1.0 - alpha) * tau_[slot] + alpha * delta;
        }
    }

    // Fast-path accessors for the solver inner loop (0-based row-major offset).
    double tau_at(int offset, int direction) const {
        return tau_[static_cast<size_t>(offset) * 4 + direction];
    }
    double local_update_at(size_t slot, double alpha) {
        double v = (1.0 - alpha) * tau_[slot] + alpha * tau0_;
        tau_[slot] = v;
        return v;
    }
    size_t slot_of(int offset, int direction) const {
        return static_cast<size_t>(offset) * 4 + direction;
    }

    /// CSV dump (cell index, direction, intensity), one row per directed edge,
    /// ordered by the column-major cell index.
    void write_csv(std::ostream& out) const {
        out << "cell_index,direction,intensity\n";
        for (int u = 1; u <= rows_ * cols_; ++u) {
            CellCoord c = cell_coords(u, rows_);
            int offset = (c.i - 1) * cols_ + (c.j - 1);
            for (int d = 0; d < 4; ++d) {
                out << u << ',' << direction_name(static_cast<Direction>(d)) << ','
                    << tau_[static_cast<size_t>(offset) * 4 + d] << '\n';
            }
        }
    }

  private:
    static void check_alpha(double alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("pheromone update: alpha must lie in (0,1)");
    }

    size_t edge_slot(CellCoord from, CellCoord to) const {
        if (from.i < 1 || from.i > rows_ || from.j < 1 || from.j > cols_)
            throw std::domain_error("PheromoneField: cell out of range");
        int dir = detail::edge_direction(from, to);
        if (dir < 0) throw std::domain_error("PheromoneField: cells are not 4-adjacent");
        size_t offset = static_cast<size_t>(from.i - 1) * cols_ + (from.j - 1);
        return offset * 4 + dir;
    }

    int rows_;
    int cols_;
    double tau0_;
    std::vector<double> tau_;
};

}  // namespace fasaco
