#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fasaco/grid.hpp"
#include "fasaco/pheromone.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

namespace detail {

inline constexpr int kCellPx = 16;  // integer cell size keeps all SVG coordinates integral

inline void svg_open(std::string& out, int rows, int cols) {
    const int w = cols * kCellPx, h = rows * kCellPx;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";
    out += "<rect width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" fill=\"#ffffff\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

inline void svg_cell(std::string& out, int i, int j, const std::string& fill) {
    out += "<rect x=\"" + std::to_string((j - 1) * kCellPx) + "\" y=\"" +
           std::to_string((i - 1) * kCellPx) + "\" width=\"" + std::to_string(kCellPx) +
           "\" height=\"" + std::to_string(kCellPx) + "\" fill=\"" + fill + "\"/>\n";
}

inline std::string blocked_fill(const CellState& s) {
    return s.kind == CellState::Kind::Unknown ? "#9e9e9e" : "#333333";
}

}  // namespace detail

/// Map plus tour as an SVG document: obstacles filled, the path drawn as a
/// blue polyline through cell centers, a red arrow at each cell entry, and a
/// green dot on the start cell. Byte-identical output for identical inputs.
inline std::string render_svg(const OccupancyGrid& grid, const Tour& tour) {
    constexpr int S = detail::kCellPx;
    std::string out;
    detail::svg_open(out, grid.rows(), grid.cols());
    for (int i = 1; i <= grid.rows(); ++i) {
        for (int j = 1; j <= grid.cols(); ++j) {
            CellState s = grid.state({i, j});
            if (!grid.traversable({i, j}))
                detail::svg_cell(out, i, j, detail::blocked_fill(s));
            else if (s.kind == CellState::Kind::Probabilistic)
                detail::svg_cell(out, i, j, "#e0e0e0");
        }
    }
    auto cx = [](CellCoord c) { return (c.j - 1) * S + S / 2; };
    auto cy = [](CellCoord c) { return (c.i - 1) * S + S / 2; };
    if (tour.cells.size() >= 2) {
        out += "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2\" points=\"";
        for (size_t k = 0; k < tour.cells.size(); ++k) {
            if (k) out += ' ';
            out += std::to_string(cx(tour.cells[k])) + "," + std::to_string(cy(tour.cells[k]));
        }
        out += "\"/>\n";
        for (size_t k = 1; k < tour.cells.size(); ++k) {
            const CellCoord a = tour.cells[k - 1], b = tour.cells[k];
            const int dx = b.j - a.j, dy = b.i - a.i;
            const int mx = (cx(a) + cx(b)) / 2, my = (cy(a) + cy(b)) / 2;
            out += "<polygon fill=\"#c62828\" points=\"";
            out += std::to_string(mx + 4 * dx) + "," + std::to_string(my + 4 * dy) + " ";
            out += std::to_string(mx - 2 * dx - 3 * dy) + "," + std::to_string(my - 2 * dy + 3 * dx) +
                   " ";
            out += std::to_string(mx - 2 * dx + 3 * dy) + "," + std::to_string(my - 2 * dy - 3 * dx);
            out += "\"/>\n";
        }
    }
    if (!tour.cells.empty()) {
        out += "<circle cx=\"" + std::to_string(cx(tour.cells.front())) + "\" cy=\"" +
               std::to_string(cy(tour.cells.front())) + "\" r=\"3\" fill=\"#2e7d32\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

/// Pheromone intensity as an SVG heatmap: each traversable cell's shade is the
/// min-max normalized sum of its four outgoing edge intensities (white = low,
/// blue = high); blocked cells render dark.
inline std::string render_pheromone_heatmap(const PheromoneField& field,
                                            const OccupancyGrid& grid) {
    if (field.rows() != grid.rows() || field.cols() != grid.cols())
        throw std::domain_error("render_pheromone_heatmap: field/grid dimensions differ");
    std::vector<double> sums(static_cast<size_t>(grid.size()), 0.0);
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int off = 0; off < grid.size(); ++off) {
        if (!grid.traversable_at(off)) continue;
        double s = 0.0;
        for (int d = 0; d < 4; ++d) s += field.tau_at(off, d);
        sums[off] = s;
        lo = any ? std::min(lo, s) : s;
        hi = any ? std::max(hi, s) : s;
        any = true;
    }
    std::string out;
    detail::svg_open(out, grid.rows(), grid.cols());
    for (int i = 1; i <= grid.rows(); ++i) {
        for (int j = 1; j <= grid.cols(); ++j) {
            const int off = (i - 1) * grid.cols() + (j - 1);
            if (!grid.traversable_at(off)) {
                detail::svg_cell(out, i, j, detail::blocked_fill(grid.state({i, j})));
                continue;
            }
            const double t = hi > lo ? (sums[off] - lo) / (hi - lo) : 0.0;
            const auto ch = [t](int a, int b) {
                return std::to_string(std::lround(a + t * (b - a)));
            };
            detail::svg_cell(out, i, j, "rgb(" + ch(255, 13) + "," + ch(255, 71) + "," +
                                            ch(255, 161) + ")");
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fasaco
