#pragma once

#include <vector>

#include "fasaco/grid.hpp"

namespace fasaco {

/// An ordered sequence of cells entered by a planner, including re-entered
/// ones. Consecutive cells are 4-adjacent; every move is one unit edge, so the
/// step count is simply cells.size() - 1.
struct Tour {
    std::vector<CellCoord> cells;

    int steps() const { return cells.empty() ? 0 : static_cast<int>(cells.size()) - 1; }
    bool empty() const { return cells.empty(); }
};

}  // namespace fasaco
