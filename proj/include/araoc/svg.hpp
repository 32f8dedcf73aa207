// svg.hpp — renders a task as a single SVG image: the three example pairs and
// the test input, drawn as colored cell lattices using the ten-color legend.
#pragma once

#include <string>

#include "araoc/grid.hpp"
#include "araoc/task.hpp"

namespace araoc {

// CSS color for each grid color, matching the prompt legend names.
inline std::string_view css_color(Color c) {
  static constexpr std::array<std::string_view, num_colors> names = {
      "black", "blue",    "red",    "green", "yellow",
      "gray",  "magenta", "orange", "cyan",  "brown"};
  return names[c.code()];
}

namespace detail {

inline constexpr int svg_cell = 18;
inline constexpr int svg_gap = 26;
inline constexpr int svg_label_h = 18;
inline constexpr int svg_margin = 12;

inline void append_grid_svg(std::string& out, const Grid& g, int x, int y,
                            const std::string& label) {
  out += "  <text x=\"" + std::to_string(x) + "\" y=\"" +
         std::to_string(y + svg_label_h - 5) +
         "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" +
         label + "</text>\n";
  const int top = y + svg_label_h;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      out += "  <rect x=\"" + std::to_string(x + c * svg_cell) + "\" y=\"" +
             std::to_string(top + r * svg_cell) + "\" width=\"" +
             std::to_string(svg_cell) + "\" height=\"" +
             std::to_string(svg_cell) + "\" fill=\"" +
             std::string(css_color(g.at(r, c))) +
             "\" stroke=\"#666\" stroke-width=\"1\"/>\n";
    }
}

}  // namespace detail

// One image per task: train input/output pairs stacked as rows, the test
// input last. Returns the full SVG document text.
inline std::string svg_for_task(const Task& task) {
  using namespace detail;
  struct Item {
    const Grid* grid;
    std::string label;
  };
  std::vector<std::vector<Item>> rows;
  for (std::size_t i = 0; i < task.train.size(); ++i)
    rows.push_back(
        {{&task.train[i].input, "Example " + std::to_string(i + 1) + " input"},
         {&task.train[i].output,
          "Example " + std::to_string(i + 1) + " output"}});
  rows.push_back({{&task.test.input, "Test input"}});

  // First column width = widest left-hand grid, so outputs line up.
  int col0_w = 0;
  for (const auto& row : rows)
    col0_w = std::max(col0_w, row[0].grid->cols() * svg_cell);

  std::string body;
  int y = svg_margin;
  int width = 0;
  for (const auto& row : rows) {
    int row_h = 0;
    int x = svg_margin;
    for (std::size_t i = 0; i < row.size(); ++i) {
      append_grid_svg(body, *row[i].grid, x, y, row[i].label);
      row_h = std::max(row_h, row[i].grid->rows() * svg_cell + svg_label_h);
      x += (i == 0 ? col0_w : row[i].grid->cols() * svg_cell) + svg_gap;
      width = std::max(width, x);
    }
    y += row_h + svg_gap;
  }
  const int height = y + svg_margin - svg_gap;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width + svg_margin) + "\" height=\"" +
                    std::to_string(height) + "\">\n";
  out += "  <title>" + task.id + "</title>\n";
  out += body;
  out += "</svg>\n";
  return out;
}

}  // namespace araoc
