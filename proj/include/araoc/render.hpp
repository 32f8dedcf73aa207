// render.hpp — turns tasks into model prompts (four styles), renders grids as
// canonical matrix text or natural-language coordinate lists, builds the
// matrix-property question set with its ground-truth oracle, and parses model
// responses back into grids.
#pragma once

#include <cctype>
#include <string>
#include <utility>

#include "araoc/grid.hpp"
#include "araoc/rank.hpp"
#include "araoc/task.hpp"

namespace araoc {

enum class PromptStyle {
  matrix_standard,
  natural_language,
  no_location,
  matrix_property
};

inline constexpr std::array<PromptStyle, 4> all_prompt_styles = {
    PromptStyle::matrix_standard, PromptStyle::natural_language,
    PromptStyle::no_location, PromptStyle::matrix_property};

inline std::string_view to_string(PromptStyle s) {
  switch (s) {
    case PromptStyle::matrix_standard: return "matrix_standard";
    case PromptStyle::natural_language: return "natural_language";
    case PromptStyle::no_location: return "no_location";
    case PromptStyle::matrix_property: return "matrix_property";
  }
  return "";
}

inline std::optional<PromptStyle> prompt_style_from_string(std::string_view s) {
  for (PromptStyle style : all_prompt_styles)
    if (to_string(style) == s) return style;
  return std::nullopt;
}

struct RenderedPrompt {
  std::string system;
  std::string user;
  PromptStyle style;
  std::string task_id;
};

inline constexpr std::string_view system_prompt = "You are a helpful assistant.";

// Canonical bracketed form: "[[0, 3], [0, 0]]".
inline std::string render_matrix_text(const Grid& g) {
  std::string out = "[";
  for (int r = 0; r < g.rows(); ++r) {
    if (r > 0) out += ", ";
    out += "[";
    for (int c = 0; c < g.cols(); ++c) {
      if (c > 0) out += ", ";
      out += static_cast<char>('0' + g.at(r, c).code());
    }
    out += "]";
  }
  out += "]";
  return out;
}

// Natural-language form: dimensions, then every non-black cell as a Cartesian
// coordinate (origin bottom-left, x = column, y counted up from the bottom),
// listed from top to bottom and left to right, each with its color name.
inline std::string render_nl(const Grid& g) {
  std::string coords;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      const Color color = g.at(r, c);
      if (color.is_black()) continue;
      if (!coords.empty()) coords += ", ";
      coords += color_name(color);
      coords += " at (";
      coords += std::to_string(c);
      coords += ", ";
      coords += std::to_string(g.rows() - 1 - r);
      coords += ")";
    }
  std::string out = "The matrix dimensions are " + std::to_string(g.cols()) +
                    " columns by " + std::to_string(g.rows()) +
                    " rows. Coordinates are based on a Cartesian coordinate "
                    "system with the origin (0,0) at the bottom-left corner. "
                    "The coordinates of the non-zero elements, listed from top "
                    "to bottom and left to right, are:";
  if (!coords.empty()) out += " " + coords;
  return out;
}

namespace detail {

inline constexpr std::string_view game_header =
    "You will be playing a game that need to find common patterns from input "
    "examples and apply the pattern for prediction on new examples.\n"
    "Lets play a game where you are transforming an input grid of numbers into "
    "an output grid of numbers.\n"
    "\n"
    "The numbers represent different colors:\n"
    "0 = black\n"
    "1 = blue\n"
    "2 = red\n"
    "3 = green\n"
    "4 = yellow\n"
    "5 = gray\n"
    "6 = magenta\n"
    "7 = orange\n"
    "8 = cyan\n"
    "9 = brown\n"
    "\n"
    "Here are examples of input grids and its corresponding output grids:\n";

inline constexpr std::string_view answer_format_clause =
    "Please only output your answer without analysis in the following "
    "format:\n"
    "\n"
    "Output grid:";

inline constexpr std::string_view location_ban_clause =
    "When answering this question, please avoid using information about: 1) "
    "the sizes of the input grids and the output grids; 2) the locations of "
    "different numbers in the input grids and the output grids.";

}  // namespace detail

// The three task styles; the matrix-property questionnaire has its own
// builder below because it asks about a single grid, not a task.
inline RenderedPrompt build_prompt(const Task& task, PromptStyle style) {
  if (style == PromptStyle::matrix_property)
    throw std::invalid_argument(
        "matrix_property prompts are built per grid, not per task");
  const bool nl = style == PromptStyle::natural_language;
  auto grid_text = [&](const Grid& g) {
    return nl ? render_nl(g) : render_matrix_text(g);
  };
  std::string user{detail::game_header};
  for (const GridPair& pair : task.train) {
    user += "Example input grid:\n";
    user += grid_text(pair.input);
    user += "\nExample output grid:\n";
    user += grid_text(pair.output);
    user += "\n\n";
  }
  user += "The input grid is:\n\n";
  user += grid_text(task.test.input);
  user += "\n\n";
  switch (style) {
    case PromptStyle::matrix_standard:
      user += "What is the output grid? ";
      user += detail::answer_format_clause;
      break;
    case PromptStyle::no_location:
      user += "What is the output grid? ";
      user += detail::location_ban_clause;
      user += "\n\n";
      user += detail::answer_format_clause;
      break;
    case PromptStyle::natural_language:
      user += "What is the output grid?\n\n";
      user += detail::answer_format_clause;
      break;
    case PromptStyle::matrix_property:
      break;  // unreachable
  }
  return RenderedPrompt{std::string(system_prompt), std::move(user), style,
                        task.id};
}

// ------------------------------------------------- matrix-property questions

class EmptyGridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ground truth for the four questions. Corners are stored 0-based in the
// order [top-left, top-right, bottom-left, bottom-right]; answers are emitted
// 1-based (scoring also accepts a consistently 0-based response).
struct MatrixPropertyOracle {
  int rows = 0, cols = 0;
  std::array<Cell, 4> corners{};
  Grid transposed{1, 1};
  int rank = 0;

  std::string size_answer() const {
    return "(" + std::to_string(rows) + "," + std::to_string(cols) + ")";
  }
  std::string location_answer(int index_base = 1) const {
    std::string out = "[";
    for (std::size_t i = 0; i < corners.size(); ++i) {
      if (i > 0) out += ", ";
      out += "(" + std::to_string(corners[i].row + index_base) + ", " +
             std::to_string(corners[i].col + index_base) + ")";
    }
    return out + "]";
  }
  std::string transpose_answer() const { return render_matrix_text(transposed); }
};

inline std::pair<RenderedPrompt, MatrixPropertyOracle>
build_matrix_property_prompt(const Grid& g, std::string id = {}) {
  std::optional<Region> box = bounding_box_nonblack(g);
  if (!box)
    throw EmptyGridError(
        "matrix-property questions need at least one non-zero cell");
  MatrixPropertyOracle oracle;
  oracle.rows = g.rows();
  oracle.cols = g.cols();
  oracle.corners = {Cell{box->top, box->left}, Cell{box->top, box->right},
                    Cell{box->bottom, box->left}, Cell{box->bottom, box->right}};
  oracle.transposed = transpose(g);
  oracle.rank = rank_exact(g);

  std::string user =
      "Given a matrix in the format of numpy array, please answer the "
      "following questions:\n"
      "\n"
      "1. What is the size of this matrix? Output in the format of (a,b).\n"
      "\n"
      "2. What is the location of the non-zero subgrids. Please first find "
      "out all the corner elements of the subgrids, then output their "
      "locations in the order of [top-left, top-right, bottom-left, "
      "bottom-right], in the format of (which row, which col).\n"
      "\n"
      "3. What is the transpose of this matrix? Output the transposed matrix "
      "in the format of a numpy array with elements separated by commas and "
      "enclosed in square brackets for each row like \"[[0, 0, 0, 0], [0, 0, "
      "0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]\".\n"
      "\n"
      "4. What is the rank of this matrix? Output the rank of the matrix.\n"
      "\n"
      "Please only output your answer without analysis in the following "
      "format:\n"
      "\n"
      "1.Size:\n"
      "\n"
      "2.Location:\n"
      "\n"
      "3.Transpose:\n"
      "\n"
      "4.Rank:\n"
      "\n"
      "Input Matrix:\n"
      "\n";
  user += render_matrix_text(g);
  return {RenderedPrompt{std::string(system_prompt), std::move(user),
                         PromptStyle::matrix_property, std::move(id)},
          std::move(oracle)};
}

// ------------------------------------------------------------- response parse

enum class ParseFailure { no_matrix_found, ragged_rows, invalid_entry, too_large };

inline std::string_view to_string(ParseFailure f) {
  switch (f) {
    case ParseFailure::no_matrix_found: return "NoMatrixFound";
    case ParseFailure::ragged_rows: return "RaggedRows";
    case ParseFailure::invalid_entry: return "InvalidEntry";
    case ParseFailure::too_large: return "TooLarge";
  }
  return "";
}

// Either a grid or a failure reason with the span of text it refers to.
struct ParseOutcome {
  std::optional<Grid> grid;
  std::optional<ParseFailure> failure;
  std::size_t begin = 0, end = 0;  // half-open byte span of the (attempted) match

  bool ok() const { return grid.has_value(); }
};

// Scans `text` for the first well-formed bracketed matrix — tolerating any
// prefix/suffix prose, arbitrary whitespace, and optional commas between
// rows. Entries must be single digits 0-9, rows must be rectangular, and the
// result must fit the 30x30 grid bound. If nothing parses, the failure of the
// first matrix-like candidate is reported.
inline ParseOutcome parse_grid_response(std::string_view text) {
  const std::size_t n = text.size();
  auto skip_ws = [&](std::size_t& i) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto is_digit = [&](std::size_t i) {
    return i < n && std::isdigit(static_cast<unsigned char>(text[i]));
  };

  std::optional<ParseOutcome> first_failure;
  std::size_t start = 0;
  while (true) {
    const std::size_t open = text.find('[', start);
    if (open == std::string_view::npos) break;
    start = open + 1;
    std::size_t i = open + 1;
    skip_ws(i);
    if (i >= n || text[i] != '[') continue;  // not a matrix candidate

    auto fail = [&](ParseFailure reason, std::size_t at) {
      if (!first_failure)
        first_failure = ParseOutcome{std::nullopt, reason, open, at};
    };

    std::vector<std::vector<int>> rows;
    bool broken = false;
    while (!broken) {            // i is at the '[' opening a row
      ++i;
      std::vector<int> row;
      skip_ws(i);
      if (i < n && text[i] == ']') {  // empty row
        fail(ParseFailure::invalid_entry, i);
        broken = true;
        break;
      }
      while (true) {             // entries
        skip_ws(i);
        if (!is_digit(i)) {
          fail(ParseFailure::invalid_entry, i);
          broken = true;
          break;
        }
        row.push_back(text[i] - '0');
        ++i;
        if (is_digit(i)) {       // multi-digit number is not a color
          fail(ParseFailure::invalid_entry, i);
          broken = true;
          break;
        }
        skip_ws(i);
        if (i < n && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < n && text[i] == ']') {
          ++i;
          break;
        }
        fail(ParseFailure::invalid_entry, i);
        broken = true;
        break;
      }
      if (broken) break;
      rows.push_back(std::move(row));
      skip_ws(i);
      if (i < n && text[i] == ',') {
        ++i;
        skip_ws(i);
      }
      if (i < n && text[i] == '[') continue;  // next row
      if (i < n && text[i] == ']') {
        ++i;
        break;  // matrix complete
      }
      fail(ParseFailure::invalid_entry, i);
      broken = true;
    }
    if (broken) continue;

    const std::size_t cols0 = rows.front().size();
    bool ragged = false;
    for (const auto& row : rows)
      if (row.size() != cols0) ragged = true;
    if (ragged) {
      fail(ParseFailure::ragged_rows, i);
      continue;
    }
    if (rows.size() > static_cast<std::size_t>(max_grid_dim) ||
        cols0 > static_cast<std::size_t>(max_grid_dim)) {
      fail(ParseFailure::too_large, i);
      continue;
    }
    return ParseOutcome{Grid::from_rows(rows), std::nullopt, open, i};
  }
  if (first_failure) return *first_failure;
  return ParseOutcome{std::nullopt, ParseFailure::no_matrix_found, 0, 0};
}

}  // namespace araoc
