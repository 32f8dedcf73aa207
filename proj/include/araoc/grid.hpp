// grid.hpp — colored integer grids and the geometric primitives used by the
// task operations: bounding boxes, connected components, enclosed interiors,
// flips and transposes. Grids are value types: construction validates bounds
// and all transforms return fresh grids.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace araoc {

inline constexpr int max_grid_dim = 30;  // rows and cols both capped here
inline constexpr int num_colors = 10;    // cell values 0..9

// A cell color. 0 is black (background); 1..9 are the named foreground colors.
class Color {
 public:
  constexpr Color() = default;
  constexpr explicit Color(int code) : code_(static_cast<std::uint8_t>(code)) {
    if (code < 0 || code >= num_colors)
      throw std::invalid_argument("color code out of range [0,9]: " +
                                  std::to_string(code));
  }
  constexpr int code() const { return code_; }
  constexpr bool is_black() const { return code_ == 0; }
  static constexpr Color black() { return Color(); }
  friend constexpr bool operator==(Color, Color) = default;
  friend constexpr auto operator<=>(Color, Color) = default;

 private:
  std::uint8_t code_ = 0;
};

// Display names, indexed by code.
inline std::string_view color_name(Color c) {
  static constexpr std::array<std::string_view, num_colors> names = {
      "black", "blue",    "red",    "green", "yellow",
      "gray",  "magenta", "orange", "cyan",  "brown"};
  return names[static_cast<std::size_t>(c.code())];
}

struct Cell {
  int row = 0;
  int col = 0;
  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;  // row-major
};

// Rectangular grid of colors, 1..30 on each side, stored row-major.
class Grid {
 public:
  Grid(int rows, int cols, Color fill = Color::black())
      : rows_(rows), cols_(cols) {
    if (rows < 1 || rows > max_grid_dim || cols < 1 || cols > max_grid_dim)
      throw std::invalid_argument("grid dimensions out of range [1,30]: " +
                                  std::to_string(rows) + "x" +
                                  std::to_string(cols));
    cells_.assign(static_cast<std::size_t>(rows) * cols, fill);
  }

  // Builds from nested int rows; validates shape and color range.
  static Grid from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows.front().empty())
      throw std::invalid_argument("grid rows must be non-empty");
    Grid g(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int r = 0; r < g.rows_; ++r) {
      if (static_cast<int>(rows[r].size()) != g.cols_)
        throw std::invalid_argument("ragged grid rows");
      for (int c = 0; c < g.cols_; ++c) g.set(r, c, Color(rows[r][c]));
    }
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool in_bounds(int r, int c) const {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_;
  }
  bool in_bounds(Cell cell) const { return in_bounds(cell.row, cell.col); }

  Color at(int r, int c) const { return cells_[index(r, c)]; }
  Color at(Cell cell) const { return at(cell.row, cell.col); }
  void set(int r, int c, Color color) { cells_[index(r, c)] = color; }
  void set(Cell cell, Color color) { set(cell.row, cell.col, color); }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
      out[r].reserve(static_cast<std::size_t>(cols_));
      for (int c = 0; c < cols_; ++c) out[r].push_back(at(r, c).code());
    }
    return out;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int r, int c) const {
    if (!in_bounds(r, c))
      throw std::out_of_range("grid access (" + std::to_string(r) + "," +
                              std::to_string(c) + ") outside " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_;
  int cols_;
  std::vector<Color> cells_;
};

inline std::pair<int, int> shape(const Grid& g) { return {g.rows(), g.cols()}; }

inline int count_nonblack(const Grid& g) {
  int n = 0;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (!g.at(r, c).is_black()) ++n;
  return n;
}

// A set of cells with its tight bounding box. `color` is set only when every
// cell shares one color; detection helpers below never produce black regions.
struct Region {
  std::vector<Cell> cells;           // sorted row-major, no duplicates
  std::optional<Color> color;        // uniform cell color, if any
  int top = 0, left = 0, bottom = 0, right = 0;  // inclusive bounding box

  int height() const { return bottom - top + 1; }
  int width() const { return right - left + 1; }
  bool empty() const { return cells.empty(); }

  bool contains(Cell cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
  }

  // Builds a region from arbitrary cells of `g`: sorts, deduplicates, derives
  // the bounding box and the uniform color (unset when colors differ).
  static Region from_cells(const Grid& g, std::vector<Cell> cells) {
    if (cells.empty()) throw std::invalid_argument("region needs >= 1 cell");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    Region region;
    region.top = region.bottom = cells.front().row;
    region.left = region.right = cells.front().col;
    std::optional<Color> uniform = g.at(cells.front());
    for (const Cell& cell : cells) {
      region.top = std::min(region.top, cell.row);
      region.bottom = std::max(region.bottom, cell.row);
      region.left = std::min(region.left, cell.col);
      region.right = std::max(region.right, cell.col);
      if (uniform && g.at(cell) != *uniform) uniform.reset();
    }
    region.color = uniform;
    region.cells = std::move(cells);
    return region;
  }
};

// Bounding box over every non-black cell; nullopt for an all-black grid.
inline std::optional<Region> bounding_box_nonblack(const Grid& g) {
  std::vector<Cell> cells;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (!g.at(r, c).is_black()) cells.push_back({r, c});
  if (cells.empty()) return std::nullopt;
  return Region::from_cells(g, std::move(cells));
}

enum class Connectivity { four, eight };

// Same-color connected components of the non-black cells, ordered by their
// first cell in row-major scan order.
inline std::vector<Region> connected_components(const Grid& g,
                                                Connectivity conn) {
  static constexpr int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static constexpr int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int dr4[] = {-1, 0, 0, 1};
  static constexpr int dc4[] = {0, -1, 1, 0};
  const int n_dirs = conn == Connectivity::eight ? 8 : 4;
  const int* drs = conn == Connectivity::eight ? dr8 : dr4;
  const int* dcs = conn == Connectivity::eight ? dc8 : dc4;

  std::vector<Region> regions;
  std::vector<char> seen(static_cast<std::size_t>(g.rows()) * g.cols(), 0);
  auto seen_at = [&](int r, int c) -> char& {
    return seen[static_cast<std::size_t>(r) * g.cols() + c];
  };

  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      if (g.at(r, c).is_black() || seen_at(r, c)) continue;
      const Color color = g.at(r, c);
      std::vector<Cell> cells;
      std::vector<Cell> frontier{{r, c}};
      seen_at(r, c) = 1;
      while (!frontier.empty()) {
        Cell cur = frontier.back();
        frontier.pop_back();
        cells.push_back(cur);
        for (int d = 0; d < n_dirs; ++d) {
          int nr = cur.row + drs[d], nc = cur.col + dcs[d];
          if (!g.in_bounds(nr, nc) || seen_at(nr, nc)) continue;
          if (g.at(nr, nc) != color) continue;
          seen_at(nr, nc) = 1;
          frontier.push_back({nr, nc});
        }
      }
      regions.push_back(Region::from_cells(g, std::move(cells)));
    }
  }
  return regions;
}

// Black cells that cannot reach the grid border by stepping through black
// cells (4-connected) — the interior that Fill Internal paints.
inline std::vector<Cell> enclosed_black_interior(const Grid& g) {
  std::vector<char> reach(static_cast<std::size_t>(g.rows()) * g.cols(), 0);
  auto reach_at = [&](int r, int c) -> char& {
    return reach[static_cast<std::size_t>(r) * g.cols() + c];
  };
  std::vector<Cell> frontier;
  auto push_if_black = [&](int r, int c) {
    if (g.at(r, c).is_black() && !reach_at(r, c)) {
      reach_at(r, c) = 1;
      frontier.push_back({r, c});
    }
  };
  for (int r = 0; r < g.rows(); ++r) {
    push_if_black(r, 0);
    push_if_black(r, g.cols() - 1);
  }
  for (int c = 0; c < g.cols(); ++c) {
    push_if_black(0, c);
    push_if_black(g.rows() - 1, c);
  }
  while (!frontier.empty()) {
    Cell cur = frontier.back();
    frontier.pop_back();
    static constexpr int dr[] = {-1, 0, 0, 1};
    static constexpr int dc[] = {0, -1, 1, 0};
    for (int d = 0; d < 4; ++d) {
      int nr = cur.row + dr[d], nc = cur.col + dc[d];
      if (g.in_bounds(nr, nc)) push_if_black(nr, nc);
    }
  }
  std::vector<Cell> interior;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.at(r, c).is_black() && !reach_at(r, c)) interior.push_back({r, c});
  return interior;  // row-major by construction
}

// Flip axes follow the everyday photo convention: a vertical flip turns the
// grid upside down (reverses row order); a horizontal flip mirrors it
// left-to-right (reverses column order).
enum class Axis { horizontal, vertical };

inline Grid flip(const Grid& g, Axis axis) {
  Grid out(g.rows(), g.cols());
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      int sr = axis == Axis::vertical ? g.rows() - 1 - r : r;
      int sc = axis == Axis::horizontal ? g.cols() - 1 - c : c;
      out.set(r, c, g.at(sr, sc));
    }
  return out;
}

inline Grid transpose(const Grid& g) {
  Grid out(g.cols(), g.rows());
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) out.set(c, r, g.at(r, c));
  return out;
}

}  // namespace araoc
