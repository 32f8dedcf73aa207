// ops.hpp — the six grid transformations and their sequential composition.
// Each operation exists in two forms: a throwing applier (apply_*) and a
// non-throwing dry-run check reachable through validate(). Both run the same
// precondition code, so "validate says Ok" and "apply succeeds" cannot drift
// apart.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "araoc/grid.hpp"

namespace araoc {

// ---------------------------------------------------------------- directions

enum class Direction8 { up, down, left, right, up_left, up_right, down_left, down_right };
enum class Direction4 { up, down, left, right };

inline constexpr std::array<Direction8, 8> all_directions8 = {
    Direction8::up,      Direction8::down,      Direction8::left,
    Direction8::right,   Direction8::up_left,   Direction8::up_right,
    Direction8::down_left, Direction8::down_right};
inline constexpr std::array<Direction4, 4> all_directions4 = {
    Direction4::up, Direction4::down, Direction4::left, Direction4::right};

// Unit (row, col) delta; up is negative row. Diagonals move one unit on both
// axes per step (Chebyshev steps).
inline constexpr std::pair<int, int> delta(Direction8 d) {
  switch (d) {
    case Direction8::up: return {-1, 0};
    case Direction8::down: return {1, 0};
    case Direction8::left: return {0, -1};
    case Direction8::right: return {0, 1};
    case Direction8::up_left: return {-1, -1};
    case Direction8::up_right: return {-1, 1};
    case Direction8::down_left: return {1, -1};
    case Direction8::down_right: return {1, 1};
  }
  return {0, 0};  // unreachable
}

inline constexpr Direction8 opposite(Direction8 d) {
  switch (d) {
    case Direction8::up: return Direction8::down;
    case Direction8::down: return Direction8::up;
    case Direction8::left: return Direction8::right;
    case Direction8::right: return Direction8::left;
    case Direction8::up_left: return Direction8::down_right;
    case Direction8::up_right: return Direction8::down_left;
    case Direction8::down_left: return Direction8::up_right;
    case Direction8::down_right: return Direction8::up_left;
  }
  return d;  // unreachable
}

inline std::string_view to_string(Direction8 d) {
  switch (d) {
    case Direction8::up: return "up";
    case Direction8::down: return "down";
    case Direction8::left: return "left";
    case Direction8::right: return "right";
    case Direction8::up_left: return "up_left";
    case Direction8::up_right: return "up_right";
    case Direction8::down_left: return "down_left";
    case Direction8::down_right: return "down_right";
  }
  return "";
}

inline std::string_view to_string(Direction4 d) {
  switch (d) {
    case Direction4::up: return "up";
    case Direction4::down: return "down";
    case Direction4::left: return "left";
    case Direction4::right: return "right";
  }
  return "";
}

inline std::optional<Direction8> direction8_from_string(std::string_view s) {
  for (Direction8 d : all_directions8)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

inline std::optional<Direction4> direction4_from_string(std::string_view s) {
  for (Direction4 d : all_directions4)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

// ------------------------------------------------------------------ op specs

struct MoveOp {
  Direction8 direction = Direction8::up;
  int steps = 1;
  friend bool operator==(const MoveOp&, const MoveOp&) = default;
};
struct ChangeColorOp {
  Color target;  // never black in a well-formed spec
  friend bool operator==(const ChangeColorOp&, const ChangeColorOp&) = default;
};
struct CopyOp {
  Direction8 direction = Direction8::up;
  int steps = 1;
  friend bool operator==(const CopyOp&, const CopyOp&) = default;
};
struct MirrorOp {
  Direction4 direction = Direction4::up;
  friend bool operator==(const MirrorOp&, const MirrorOp&) = default;
};
struct FillInternalOp {
  Color fill;  // never black in a well-formed spec
  friend bool operator==(const FillInternalOp&, const FillInternalOp&) = default;
};
struct ScaleOp {
  friend bool operator==(const ScaleOp&, const ScaleOp&) = default;
};

struct OpSpec;

// Ordered sequence of atomic steps (no nested compositions).
struct ComposeOp {
  std::vector<OpSpec> steps;
  friend bool operator==(const ComposeOp&, const ComposeOp&);
};

struct OpSpec {
  std::variant<MoveOp, ChangeColorOp, CopyOp, MirrorOp, FillInternalOp,
               ScaleOp, ComposeOp>
      op;
  friend bool operator==(const OpSpec&, const OpSpec&) = default;
};

inline bool operator==(const ComposeOp& a, const ComposeOp& b) {
  return a.steps == b.steps;
}

// Stable family label used in task ids, JSON and summaries.
inline std::string_view family_name(const OpSpec& spec) {
  struct Visitor {
    std::string_view operator()(const MoveOp&) const { return "move"; }
    std::string_view operator()(const ChangeColorOp&) const { return "change_color"; }
    std::string_view operator()(const CopyOp&) const { return "copy"; }
    std::string_view operator()(const MirrorOp&) const { return "mirror"; }
    std::string_view operator()(const FillInternalOp&) const { return "fill_internal"; }
    std::string_view operator()(const ScaleOp&) const { return "scale"; }
    std::string_view operator()(const ComposeOp&) const { return "compose"; }
  };
  return std::visit(Visitor{}, spec.op);
}

// ---------------------------------------------------------------- violations

enum class ViolationKind {
  out_of_bounds,
  overlap,
  empty_region,
  same_color,
  no_interior,
  size_overflow,
  ambiguous_region,  // a region-targeted op found several candidate regions
  invalid_spec,      // malformed parameters (steps < 1, black target, ...)
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::out_of_bounds: return "out_of_bounds";
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::empty_region: return "empty_region";
    case ViolationKind::same_color: return "same_color";
    case ViolationKind::no_interior: return "no_interior";
    case ViolationKind::size_overflow: return "size_overflow";
    case ViolationKind::ambiguous_region: return "ambiguous_region";
    case ViolationKind::invalid_spec: return "invalid_spec";
  }
  return "";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
  int step = -1;  // index within a composition; -1 outside one

  std::string message() const {
    std::string msg(to_string(kind));
    if (step >= 0) msg += " at step " + std::to_string(step);
    if (!detail.empty()) msg += ": " + detail;
    return msg;
  }
};

class ApplyError : public std::runtime_error {
 public:
  explicit ApplyError(Violation v)
      : std::runtime_error(v.message()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

namespace detail {

inline Violation violated(ViolationKind kind, std::string detail = {}) {
  return Violation{kind, std::move(detail), -1};
}

// Region-targeted ops outside a composition act on the grid's single
// same-color component; zero or several components make the target undefined.
inline std::variant<Region, Violation> sole_region(const Grid& g) {
  std::vector<Region> components = connected_components(g, Connectivity::four);
  if (components.empty())
    return violated(ViolationKind::empty_region, "grid has no non-black cells");
  if (components.size() > 1)
    return violated(ViolationKind::ambiguous_region,
                    std::to_string(components.size()) + " candidate regions");
  return std::move(components.front());
}

inline std::optional<Violation> check_translation_bounds(const Grid& g,
                                                         const Region& r,
                                                         int dr, int dc) {
  if (r.top + dr < 0 || r.bottom + dr >= g.rows() || r.left + dc < 0 ||
      r.right + dc >= g.cols())
    return violated(ViolationKind::out_of_bounds,
                    "translated region leaves the grid");
  return std::nullopt;
}

}  // namespace detail

// ----------------------------------------------------------------- appliers

// Checkers return the first violated precondition, or nullopt when the op
// applies. They are the single source of truth used by apply_* and validate().

inline std::optional<Violation> check_move(const Grid& g, const Region& r,
                                           const MoveOp& op) {
  if (op.steps < 1)
    return detail::violated(ViolationKind::invalid_spec, "steps must be >= 1");
  if (r.empty()) return detail::violated(ViolationKind::empty_region);
  auto [dr, dc] = delta(op.direction);
  return detail::check_translation_bounds(g, r, dr * op.steps, dc * op.steps);
}

inline Grid apply_move(const Grid& g, const Region& r, const MoveOp& op) {
  if (auto v = check_move(g, r, op)) throw ApplyError(*v);
  auto [dr, dc] = delta(op.direction);
  Grid out = g;
  for (const Cell& cell : r.cells) out.set(cell, Color::black());
  for (const Cell& cell : r.cells)
    out.set(cell.row + dr * op.steps, cell.col + dc * op.steps, g.at(cell));
  return out;
}

inline std::optional<Violation> check_change_color(const Grid&, const Region& r,
                                                   const ChangeColorOp& op) {
  if (op.target.is_black())
    return detail::violated(ViolationKind::invalid_spec, "target must be non-black");
  if (r.empty()) return detail::violated(ViolationKind::empty_region);
  if (r.color && *r.color == op.target)
    return detail::violated(ViolationKind::same_color,
                            "region already has the target color");
  return std::nullopt;
}

inline Grid apply_change_color(const Grid& g, const Region& r,
                               const ChangeColorOp& op) {
  if (auto v = check_change_color(g, r, op)) throw ApplyError(*v);
  Grid out = g;
  for (const Cell& cell : r.cells) out.set(cell, op.target);
  return out;
}

inline std::optional<Violation> check_copy(const Grid& g, const Region& r,
                                           const CopyOp& op) {
  if (op.steps < 1)
    return detail::violated(ViolationKind::invalid_spec, "steps must be >= 1");
  if (r.empty()) return detail::violated(ViolationKind::empty_region);
  auto [dr, dc] = delta(op.direction);
  if (auto v = detail::check_translation_bounds(g, r, dr * op.steps, dc * op.steps))
    return v;
  for (const Cell& cell : r.cells)
    if (r.contains({cell.row + dr * op.steps, cell.col + dc * op.steps}))
      return detail::violated(ViolationKind::overlap,
                              "copy intersects the source region");
  return std::nullopt;
}

inline Grid apply_copy(const Grid& g, const Region& r, const CopyOp& op) {
  if (auto v = check_copy(g, r, op)) throw ApplyError(*v);
  auto [dr, dc] = delta(op.direction);
  Grid out = g;
  for (const Cell& cell : r.cells)
    out.set(cell.row + dr * op.steps, cell.col + dc * op.steps, g.at(cell));
  return out;
}

inline std::optional<Violation> check_mirror(const Grid& g, const MirrorOp& op) {
  const bool vertical =
      op.direction == Direction4::up || op.direction == Direction4::down;
  const int doubled = 2 * (vertical ? g.rows() : g.cols());
  if (doubled > max_grid_dim)
    return detail::violated(ViolationKind::size_overflow,
                            "doubled dimension " + std::to_string(doubled) +
                                " exceeds " + std::to_string(max_grid_dim));
  return std::nullopt;
}

// The reflection is concatenated on the named side, doubling that axis; the
// result reads as a palindrome along it.
inline Grid apply_mirror(const Grid& g, const MirrorOp& op) {
  if (auto v = check_mirror(g, op)) throw ApplyError(*v);
  const bool vertical =
      op.direction == Direction4::up || op.direction == Direction4::down;
  Grid reflection =
      flip(g, vertical ? Axis::vertical : Axis::horizontal);
  const Grid& first =
      (op.direction == Direction4::up || op.direction == Direction4::left)
          ? reflection
          : g;
  const Grid& second = (&first == &g) ? reflection : g;
  if (vertical) {
    Grid out(2 * g.rows(), g.cols());
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) {
        out.set(r, c, first.at(r, c));
        out.set(r + g.rows(), c, second.at(r, c));
      }
    return out;
  }
  Grid out(g.rows(), 2 * g.cols());
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      out.set(r, c, first.at(r, c));
      out.set(r, c + g.cols(), second.at(r, c));
    }
  return out;
}

inline std::optional<Violation> check_fill_internal(const Grid& g,
                                                    const FillInternalOp& op) {
  if (op.fill.is_black())
    return detail::violated(ViolationKind::invalid_spec, "fill must be non-black");
  if (enclosed_black_interior(g).empty())
    return detail::violated(ViolationKind::no_interior,
                            "no enclosed black cells to fill");
  return std::nullopt;
}

inline Grid apply_fill_internal(const Grid& g, const FillInternalOp& op) {
  if (auto v = check_fill_internal(g, op)) throw ApplyError(*v);
  Grid out = g;
  for (const Cell& cell : enclosed_black_interior(g)) out.set(cell, op.fill);
  return out;
}

inline std::optional<Violation> check_scale(const Grid& g) {
  if (g.rows() * g.rows() > max_grid_dim || g.cols() * g.cols() > max_grid_dim)
    return detail::violated(ViolationKind::size_overflow,
                            "squared shape exceeds the grid bound");
  return std::nullopt;
}

// Output is an a*a x b*b grid of a x b blocks; block (i,j) repeats the input
// when input cell (i,j) is colored and stays black otherwise.
inline Grid apply_scale(const Grid& g) {
  if (auto v = check_scale(g)) throw ApplyError(*v);
  const int a = g.rows(), b = g.cols();
  Grid out(a * a, b * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      if (g.at(i, j).is_black()) continue;
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c)
          out.set(i * a + r, j * b + c, g.at(r, c));
    }
  return out;
}

// ------------------------------------------------------------- composition

namespace detail {

// Running state while stepping through a composition: the current grid plus
// the region the next region-targeted step should act on. The first such step
// targets the grid's sole region; afterwards the target is whatever the
// previous step created or modified (for Copy: the new copy). Whole-grid
// steps (Mirror/FillInternal/Scale) clear the tracked target.
struct ComposeCursor {
  Grid grid;
  std::optional<Region> target;
};

inline std::variant<Region, Violation> resolve_target(const ComposeCursor& cur) {
  if (cur.target) return *cur.target;
  return sole_region(cur.grid);
}

inline std::vector<Cell> translated_cells(const Region& r, int dr, int dc) {
  std::vector<Cell> out;
  out.reserve(r.cells.size());
  for (const Cell& cell : r.cells) out.push_back({cell.row + dr, cell.col + dc});
  return out;
}

// Applies one atomic step to the cursor; returns the violation (cursor
// untouched) when the step's preconditions fail.
inline std::optional<Violation> apply_step(ComposeCursor& cur, const OpSpec& spec);

struct StepVisitor {
  ComposeCursor& cur;

  std::optional<Violation> operator()(const MoveOp& op) const {
    auto resolved = resolve_target(cur);
    if (auto* v = std::get_if<Violation>(&resolved)) return *v;
    Region& r = std::get<Region>(resolved);
    if (auto v = check_move(cur.grid, r, op)) return v;
    Grid next = apply_move(cur.grid, r, op);
    auto [dr, dc] = delta(op.direction);
    cur.target = Region::from_cells(
        next, translated_cells(r, dr * op.steps, dc * op.steps));
    cur.grid = std::move(next);
    return std::nullopt;
  }

  std::optional<Violation> operator()(const ChangeColorOp& op) const {
    auto resolved = resolve_target(cur);
    if (auto* v = std::get_if<Violation>(&resolved)) return *v;
    Region& r = std::get<Region>(resolved);
    if (auto v = check_change_color(cur.grid, r, op)) return v;
    cur.grid = apply_change_color(cur.grid, r, op);
    cur.target = Region::from_cells(cur.grid, r.cells);
    return std::nullopt;
  }

  std::optional<Violation> operator()(const CopyOp& op) const {
    auto resolved = resolve_target(cur);
    if (auto* v = std::get_if<Violation>(&resolved)) return *v;
    Region& r = std::get<Region>(resolved);
    if (auto v = check_copy(cur.grid, r, op)) return v;
    Grid next = apply_copy(cur.grid, r, op);
    auto [dr, dc] = delta(op.direction);
    cur.target = Region::from_cells(
        next, translated_cells(r, dr * op.steps, dc * op.steps));
    cur.grid = std::move(next);
    return std::nullopt;
  }

  std::optional<Violation> operator()(const MirrorOp& op) const {
    if (auto v = check_mirror(cur.grid, op)) return v;
    cur.grid = apply_mirror(cur.grid, op);
    cur.target.reset();
    return std::nullopt;
  }

  std::optional<Violation> operator()(const FillInternalOp& op) const {
    if (auto v = check_fill_internal(cur.grid, op)) return v;
    cur.grid = apply_fill_internal(cur.grid, op);
    cur.target.reset();
    return std::nullopt;
  }

  std::optional<Violation> operator()(const ScaleOp&) const {
    if (auto v = check_scale(cur.grid)) return v;
    cur.grid = apply_scale(cur.grid);
    cur.target.reset();
    return std::nullopt;
  }

  std::optional<Violation> operator()(const ComposeOp&) const {
    return violated(ViolationKind::invalid_spec,
                    "compositions cannot nest");
  }
};

inline std::optional<Violation> apply_step(ComposeCursor& cur,
                                           const OpSpec& spec) {
  return std::visit(StepVisitor{cur}, spec.op);
}

// Runs a whole composition; on failure the violation carries the step index.
inline std::variant<Grid, Violation> run_composition(const Grid& g,
                                                     const ComposeOp& op) {
  if (op.steps.empty())
    return violated(ViolationKind::invalid_spec, "composition has no steps");
  ComposeCursor cur{g, std::nullopt};
  for (std::size_t i = 0; i < op.steps.size(); ++i) {
    if (auto v = apply_step(cur, op.steps[i])) {
      v->step = static_cast<int>(i);
      return *v;
    }
  }
  return std::move(cur.grid);
}

}  // namespace detail

inline Grid apply_composition(const Grid& g, const ComposeOp& op) {
  auto result = detail::run_composition(g, op);
  if (auto* v = std::get_if<Violation>(&result)) throw ApplyError(*v);
  return std::move(std::get<Grid>(result));
}

// ------------------------------------------------------- top-level dispatch

// Applies any spec to a grid. Region-targeted atomic ops act on the grid's
// sole same-color component; compositions follow the provenance rule.
inline Grid apply(const Grid& g, const OpSpec& spec) {
  if (const auto* compose = std::get_if<ComposeOp>(&spec.op))
    return apply_composition(g, *compose);
  detail::ComposeCursor cur{g, std::nullopt};
  if (auto v = detail::apply_step(cur, spec)) throw ApplyError(*v);
  return std::move(cur.grid);
}

// Dry-run precondition check; empty result means apply(g, spec) succeeds.
inline std::vector<Violation> validate(const Grid& g, const OpSpec& spec) {
  if (const auto* compose = std::get_if<ComposeOp>(&spec.op)) {
    auto result = detail::run_composition(g, *compose);
    if (auto* v = std::get_if<Violation>(&result)) return {*v};
    return {};
  }
  detail::ComposeCursor cur{g, std::nullopt};
  if (auto v = detail::apply_step(cur, spec)) return {*v};
  return {};
}

}  // namespace araoc
