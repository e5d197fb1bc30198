#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fasaco {

/// Grid cell address, 1-based: i is the row, j is the column.
struct CellCoord {
    int i = 0;
    int j = 0;

    friend bool operator==(CellCoord a, CellCoord b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(CellCoord a, CellCoord b) { return !(a == b); }
    friend bool operator<(CellCoord a, CellCoord b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
};

enum class Direction : int { Up = 0, Down = 1, Left = 2, Right = 3 };

/// 4-connected motion model. The direction order is fixed and load-bearing:
/// tie-breaking in the solvers walks this list front to back.
struct MotionModel {
    std::array<Direction, 4> directions{Direction::Up, Direction::Down,
                                        Direction::Left, Direction::Right};
};

inline constexpr MotionModel four_connected{};

inline const char* direction_name(Direction d) {
    switch (d) {
        case Direction::Up: return "up";
        case Direction::Down: return "down";
        case Direction::Left: return "left";
        case Direction::Right: return "right";
    }
    return "?";
}

/// Unit step from `c` in direction `d` (may leave the grid; callers bound-check).
inline CellCoord step(CellCoord c, Direction d) {
    switch (d) {
        case Direction::Up: return {c.i - 1, c.j};
        case Direction::Down: return {c.i + 1, c.j};
        case Direction::Left: return {c.i, c.j - 1};
        case Direction::Right: return {c.i, c.j + 1};
    }
    return c;
}

inline int manhattan(CellCoord a, CellCoord b) {
    return std::abs(a.i - b.i) + std::abs(a.j - b.j);
}

/// Column-major linear cell index: u = (j-1)*rows + i, 1-based.
inline int cell_index(CellCoord c, int rows) {
    if (rows < 1 || c.i < 1 || c.i > rows || c.j < 1)
        throw std::domain_error("cell_index: coordinate out of range");
    return (c.j - 1) * rows + c.i;
}

/// Inverse of cell_index. The column bound is not known here; grids validate it.
inline CellCoord cell_coords(int u, int rows) {
    if (rows < 1 || u < 1) throw std::domain_error("cell_coords: index out of range");
    return {(u - 1) % rows + 1, (u - 1) / rows + 1};
}

struct CellState {
    enum class Kind { Free, Occupied, Unknown, Probabilistic };
    Kind kind;
    double p;
};

/// Maps an occupancy probability to a cell state. Total on [0,1]:
/// 0 -> Free, 1 -> Occupied, 0.5 -> Unknown, anything else -> Probabilistic.
inline CellState cell_state(double p) {
    if (p == 0.0) return {CellState::Kind::Free, 0.0};
    if (p == 1.0) return {CellState::Kind::Occupied, 1.0};
    if (p == 0.5) return {CellState::Kind::Unknown, 0.5};
    return {CellState::Kind::Probabilistic, p};
}

/// Occupancy grid map. Immutable after construction; rows x cols cells, each
/// carrying an occupancy probability in [0,1]. Probabilities are stored in row
/// scan order; the public linear index (cell_index) is column-major.
class OccupancyGrid {
  public:
    OccupancyGrid(int rows, int cols, std::vector<double> probs, double resolution = 1.0)
        : rows_(rows), cols_(cols), resolution_(resolution), probs_(std::move(probs)) {
        if (rows_ < 1 || cols_ < 1)
            throw std::invalid_argument("OccupancyGrid: dimensions must be positive");
        if (resolution_ <= 0.0)
            throw std::invalid_argument("OccupancyGrid: resolution must be positive");
        if (probs_.size() != static_cast<size_t>(rows_) * static_cast<size_t>(cols_))
            throw std::invalid_argument("OccupancyGrid: probability count does not match dimensions");
        traversable_.resize(probs_.size());
        for (size_t k = 0; k < probs_.size(); ++k) {
            if (!(probs_[k] >= 0.0 && probs_[k] <= 1.0))
                throw std::invalid_argument("OccupancyGrid: probability outside [0,1]");
            traversable_[k] = probs_[k] < 0.5;
        }
    }

    static OccupancyGrid uniform(int rows, int cols, double p, double resolution = 1.0) {
        return OccupancyGrid(rows, cols,
                             std::vector<double>(static_cast<size_t>(rows) * cols, p),
                             resolution);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double resolution() const { return resolution_; }
    int size() const { return rows_ * cols_; }

    bool in_bounds(CellCoord c) const {
        return c.i >= 1 && c.i <= rows_ && c.j >= 1 && c.j <= cols_;
    }

    /// 0-based row-major storage offset for a valid coordinate.
    int offset(CellCoord c) const {
        check(c);
        return (c.i - 1) * cols_ + (c.j - 1);
    }

    CellCoord coord_at(int offset) const {
        if (offset < 0 || offset >= size())
            throw std::domain_error("OccupancyGrid: offset out of range");
        return {offset / cols_ + 1, offset % cols_ + 1};
    }

    double probability(CellCoord c) const { return probs_[offset(c)]; }

    CellState state(CellCoord c) const { return cell_state(probability(c)); }

    /// A cell is traversable for planning iff its occupancy probability is
    /// below 0.5; unknown (0.5) and occupied cells block motion.
    bool traversable(CellCoord c) const { return traversable_[offset(c)]; }

    bool traversable_at(int offset) const { return traversable_[static_cast<size_t>(offset)]; }

    /// Paper-style linear index of a cell (column-major, 1-based), validated
    /// against both grid dimensions.
    int index_of(CellCoord c) const {
        check(c);
        return cell_index(c, rows_);
    }

    CellCoord coord_of_index(int u) const {
        if (u < 1 || u > size()) throw std::domain_error("OccupancyGrid: linear index out of range");
        return cell_coords(u, rows_);
    }

    int traversable_count() const {
        int n = 0;
        for (auto t : traversable_) n += t ? 1 : 0;
        return n;
    }

  private:
    void check(CellCoord c) const {
        if (!in_bounds(c)) throw std::domain_error("OccupancyGrid: coordinate out of range");
    }

    int rows_;
    int cols_;
    double resolution_;
    std::vector<double> probs_;
    std::vector<std::uint8_t> traversable_;
};

/// Free traversable neighbors of `at`, in the motion model's direction order.
/// Off-map, occupied, and unknown cells are excluded; at most 4 entries.
inline std::vector<CellCoord> neighbors(const OccupancyGrid& grid, CellCoord at,
                                        const MotionModel& model = four_connected) {
    std::vector<CellCoord> out;
    out.reserve(4);
    for (Direction d : model.directions) {
        CellCoord n = step(at, d);
        if (grid.in_bounds(n) && grid.traversable(n)) out.push_back(n);
    }
    return out;
}

/// Parses an ASCII map: '.' free, '#' occupied, '?' unknown; newline-separated
/// rows, optional trailing newline. Throws std::runtime_error on ragged rows,
/// unknown characters, or empty input.
inline OccupancyGrid parse_ascii_map(std::string_view text, double resolution = 1.0) {
    std::vector<double> probs;
    int rows = 0;
    int cols = -1;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty() && pos >= text.size()) break;  // trailing newline
        if (cols == -1) {
            cols = static_cast<int>(line.size());
        } else if (static_cast<int>(line.size()) != cols) {
            throw std::runtime_error("parse_ascii_map: ragged rows");
        }
        for (char ch : line) {
            switch (ch) {
                case '.': probs.push_back(0.0); break;
                case '#': probs.push_back(1.0); break;
                case '?': probs.push_back(0.5); break;
                default:
                    throw std::runtime_error(std::string("parse_ascii_map: unknown character '") +
                                             ch + "'");
            }
        }
        ++rows;
    }
    if (rows == 0 || cols <= 0) throw std::runtime_error("parse_ascii_map: empty input");
    return OccupancyGrid(rows, cols, std::move(probs), resolution);
}

/// Serializes a grid back to the ASCII format (trailing newline included).
/// Probabilistic cells round to the nearest representable character.
inline std::string to_ascii(const OccupancyGrid& grid) {
    std::string out;
    out.reserve(static_cast<size_t>(grid.rows()) * (grid.cols() + 1));
    for (int i = 1; i <= grid.rows(); ++i) {
        for (int j = 1; j <= grid.cols(); ++j) {
            double p = grid.probability({i, j});
            out += p == 0.5 ? '?' : (p < 0.5 ? '.' : '#');
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline int pgm_next_value(std::istream& in) {
    // Skips whitespace and '#' comments, then reads one non-negative integer.
    for (;;) {
        int ch = in.peek();
        if (ch == EOF) throw std::runtime_error("parse_pgm_map: truncated header");
        if (std::isspace(ch)) {
            in.get();
        } else if (ch == '#') {
            std::string junk;
            std::getline(in, junk);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value) || value < 0) throw std::runtime_error("parse_pgm_map: malformed header");
    return value;
}

}  // namespace detail

/// Parses a PGM image (P2 ASCII or P5 binary, maxval <= 255) into an occupancy
/// grid. Pixel v maps to occupancy p = 1 - v/255, then thresholds: p at or
/// above `occupied_threshold` -> 1.0, p at or below `free_threshold` -> 0.0,
/// anything between -> 0.5 (unknown).
inline OccupancyGrid parse_pgm_map(std::string_view bytes, double occupied_threshold = 0.65,
                                   double free_threshold = 0.196, double resolution = 1.0) {
    if (!(free_threshold >= 0.0 && free_threshold < occupied_threshold && occupied_threshold <= 1.0))
        throw std::invalid_argument("parse_pgm_map: thresholds must satisfy 0 <= free < occupied <= 1");
    std::istringstream in{std::string(bytes)};
    std::string magic;
    in >> magic;
    if (magic != "P2" && magic != "P5") throw std::runtime_error("parse_pgm_map: malformed header");
    int cols = detail::pgm_next_value(in);
    int rows = detail::pgm_next_value(in);
    int maxval = detail::pgm_next_value(in);
    if (cols < 1 || rows < 1 || maxval < 1 || maxval > 255)
        throw std::runtime_error("parse_pgm_map: malformed header");

    std::vector<int> pixels;
    pixels.reserve(static_cast<size_t>(rows) * cols);
    if (magic == "P2") {
        int v;
        while (in >> v) {
            if (v < 0 || v > maxval) throw std::runtime_error("parse_pgm_map: pixel out of range");
            pixels.push_back(v);
        }
    } else {
        in.get();  // single whitespace byte after maxval
        char b;
        while (pixels.size() < static_cast<size_t>(rows) * cols && in.get(b))
            pixels.push_back(static_cast<unsigned char>(b));
    }
    if (pixels.size() != static_cast<size_t>(rows) * cols)
        throw std::runtime_error("parse_pgm_map: truncated payload");

    std::vector<double> probs;
    probs.reserve(pixels.size());
    for (int v : pixels) {
        double p = 1.0 - v / 255.0;
        if (p >= occupied_threshold)
            probs.push_back(1.0);
        else if (p <= free_threshold)
            probs.push_back(0.0);
        else
            probs.push_back(0.5);
    }
    return OccupancyGrid(rows, cols, std::move(probs), resolution);
}

}  // namespace fasaco
