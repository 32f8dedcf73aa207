// The six grid transformations and their sequential composition: frozen
// worked examples, precondition taxonomy, and randomized invariant audits
// cross-checked against independently constructed expected grids.
#include "catch_amalgamated.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "araoc/grid.hpp"
#include "araoc/ops.hpp"
#include "araoc/rng.hpp"

using namespace araoc;

namespace {

Grid G(const std::vector<std::vector<int>>& rows) { return Grid::from_rows(rows); }

OpSpec move_spec(Direction8 d, int steps) { return OpSpec{MoveOp{d, steps}}; }
OpSpec color_spec(int target) { return OpSpec{ChangeColorOp{Color(target)}}; }
OpSpec copy_spec(Direction8 d, int steps) { return OpSpec{CopyOp{d, steps}}; }
OpSpec mirror_spec(Direction4 d) { return OpSpec{MirrorOp{d}}; }
OpSpec fill_spec(int fill) { return OpSpec{FillInternalOp{Color(fill)}}; }
OpSpec scale_spec() { return OpSpec{ScaleOp{}}; }

ViolationKind first_kind(const Grid& g, const OpSpec& spec) {
  auto violations = validate(g, spec);
  REQUIRE_FALSE(violations.empty());
  return violations.front().kind;
}

ViolationKind thrown_kind(const Grid& g, const OpSpec& spec) {
  try {
    (void)apply(g, spec);
  } catch (const ApplyError& e) {
    return e.violation().kind;
  }
  FAIL("apply was expected to throw");
  return ViolationKind::invalid_spec;  // unreachable
}

// A grid whose only non-black cells form one solid h x w rectangle.
struct SolidRect {
  Grid grid;
  int top, left, h, w;
  Color color;
};

SolidRect random_solid_rect(Rng& rng, int dim_lo = 1, int dim_hi = 16) {
  const int rows = rng.uniform(dim_lo, dim_hi);
  const int cols = rng.uniform(dim_lo, dim_hi);
  const int h = rng.uniform(1, rows);
  const int w = rng.uniform(1, cols);
  const int top = rng.uniform(0, rows - h);
  const int left = rng.uniform(0, cols - w);
  const Color color(rng.uniform(1, 9));
  Grid g(rows, cols);
  for (int r = top; r < top + h; ++r)
    for (int c = left; c < left + w; ++c) g.set(r, c, color);
  return SolidRect{std::move(g), top, left, h, w, color};
}

// Independent oracle: a grid that is black except for one painted rectangle.
Grid rect_grid(int rows, int cols, int top, int left, int h, int w, Color color) {
  Grid g(rows, cols);
  for (int r = top; r < top + h; ++r)
    for (int c = left; c < left + w; ++c) g.set(r, c, color);
  return g;
}

std::map<int, int> color_histogram(const Grid& g) {
  std::map<int, int> hist;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (!g.at(r, c).is_black()) ++hist[g.at(r, c).code()];
  return hist;
}

// Largest step count that keeps the rectangle's translated bounding box
// inside the grid for direction d; 0 when even one step leaves the grid.
int max_in_bounds_steps(const SolidRect& s, Direction8 d) {
  auto [dr, dc] = delta(d);
  int limit = 64;
  if (dr < 0) limit = std::min(limit, s.top);
  if (dr > 0) limit = std::min(limit, s.grid.rows() - (s.top + s.h));
  if (dc < 0) limit = std::min(limit, s.left);
  if (dc > 0) limit = std::min(limit, s.grid.cols() - (s.left + s.w));
  return limit;
}

Grid random_noise_grid(Rng& rng, int dim_hi = 8, int black_tenths = 5) {
  const int rows = rng.uniform(1, dim_hi);
  const int cols = rng.uniform(1, dim_hi);
  Grid g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.uniform(0, 9) >= black_tenths) g.set(r, c, Color(rng.uniform(1, 9)));
  return g;
}

}  // namespace

// ---------------------------------------------------------------- directions

TEST_CASE("direction deltas are the eight compass unit offsets") {
  CHECK(delta(Direction8::up) == std::pair{-1, 0});
  CHECK(delta(Direction8::down) == std::pair{1, 0});
  CHECK(delta(Direction8::left) == std::pair{0, -1});
  CHECK(delta(Direction8::right) == std::pair{0, 1});
  CHECK(delta(Direction8::up_left) == std::pair{-1, -1});
  CHECK(delta(Direction8::up_right) == std::pair{-1, 1});
  CHECK(delta(Direction8::down_left) == std::pair{1, -1});
  CHECK(delta(Direction8::down_right) == std::pair{1, 1});
  for (Direction8 d : all_directions8) {
    auto [dr, dc] = delta(d);
    CHECK((dr != 0 || dc != 0));
    CHECK(opposite(opposite(d)) == d);
    auto [or_, oc] = delta(opposite(d));
    CHECK(dr == -or_);
    CHECK(dc == -oc);
  }
}

TEST_CASE("direction names round-trip through parsing") {
  for (Direction8 d : all_directions8) {
    auto back = direction8_from_string(to_string(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  for (Direction4 d : all_directions4) {
    auto back = direction4_from_string(to_string(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK_FALSE(direction8_from_string("sideways").has_value());
  CHECK_FALSE(direction4_from_string("up_left").has_value());
}

TEST_CASE("family names identify each rule kind") {
  CHECK(family_name(move_spec(Direction8::up, 1)) == "move");
  CHECK(family_name(color_spec(3)) == "change_color");
  CHECK(family_name(copy_spec(Direction8::down, 2)) == "copy");
  CHECK(family_name(mirror_spec(Direction4::left)) == "mirror");
  CHECK(family_name(fill_spec(4)) == "fill_internal");
  CHECK(family_name(scale_spec()) == "scale");
  CHECK(family_name(OpSpec{ComposeOp{{copy_spec(Direction8::up, 1),
                                      move_spec(Direction8::right, 1)}}}) ==
        "compose");
}

// ---------------------------------------------------------------------- move

TEST_CASE("move translates the region and blacks out its old cells") {
  CHECK(apply(G({{0, 0}, {0, 6}}), move_spec(Direction8::up, 1)) ==
        G({{0, 6}, {0, 0}}));
  CHECK(apply(G({{0, 0}, {7, 0}}), move_spec(Direction8::up_right, 1)) ==
        G({{0, 7}, {0, 0}}));
  // Multi-cell L-shape keeps its shape while moving.
  CHECK(apply(G({{2, 0, 0}, {2, 2, 0}, {0, 0, 0}}),
              move_spec(Direction8::down_right, 1)) ==
        G({{0, 0, 0}, {0, 2, 0}, {0, 2, 2}}));
}

TEST_CASE("move off the edge is rejected before and during application") {
  const Grid g = G({{0, 5}});
  CHECK(first_kind(g, move_spec(Direction8::up, 1)) == ViolationKind::out_of_bounds);
  CHECK(thrown_kind(g, move_spec(Direction8::up, 1)) == ViolationKind::out_of_bounds);
  CHECK(first_kind(g, move_spec(Direction8::right, 1)) ==
        ViolationKind::out_of_bounds);
  // One step left is fine; two is not.
  CHECK(validate(g, move_spec(Direction8::left, 1)).empty());
  CHECK(first_kind(g, move_spec(Direction8::left, 2)) ==
        ViolationKind::out_of_bounds);
}

TEST_CASE("move on a blank or multi-part grid cannot pick a region") {
  CHECK(first_kind(G({{0, 0}, {0, 0}}), move_spec(Direction8::up, 1)) ==
        ViolationKind::empty_region);
  // Two same-color parts, and two touching parts of different colors: both
  // leave the target ambiguous.
  CHECK(first_kind(G({{3, 0, 3}}), move_spec(Direction8::left, 1)) ==
        ViolationKind::ambiguous_region);
  CHECK(first_kind(G({{1, 2}}), move_spec(Direction8::down, 1)) ==
        ViolationKind::ambiguous_region);
}

TEST_CASE("move audit: translation oracle, color preservation, inverse") {
  Rng rng(0x5eed0001);
  int performed = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    SolidRect s = random_solid_rect(rng);
    const Direction8 dir = all_directions8[rng.uniform(0, 7)];
    const int limit = std::min(max_in_bounds_steps(s, dir), 8);
    if (limit < 1) continue;
    const int steps = rng.uniform(1, limit);
    const OpSpec spec = move_spec(dir, steps);
    REQUIRE(validate(s.grid, spec).empty());
    const Grid out = apply(s.grid, spec);
    auto [dr, dc] = delta(dir);
    CHECK(out == rect_grid(s.grid.rows(), s.grid.cols(), s.top + dr * steps,
                           s.left + dc * steps, s.h, s.w, s.color));
    CHECK(shape(out) == shape(s.grid));
    CHECK(color_histogram(out) == color_histogram(s.grid));
    CHECK(apply(out, move_spec(opposite(dir), steps)) == s.grid);
    ++performed;
  }
  CHECK(performed > 1500);
}

// -------------------------------------------------------------- change color

TEST_CASE("change color repaints the region in place") {
  CHECK(apply(G({{8, 8}, {0, 0}}), color_spec(2)) == G({{2, 2}, {0, 0}}));
  CHECK(apply(G({{9}}), color_spec(1)) == G({{1}}));
}

TEST_CASE("change color rejects the region's own color and black") {
  CHECK(first_kind(G({{0, 4}}), color_spec(4)) == ViolationKind::same_color);
  CHECK(thrown_kind(G({{0, 4}}), color_spec(4)) == ViolationKind::same_color);
  CHECK(first_kind(G({{0, 4}}), color_spec(0)) == ViolationKind::invalid_spec);
  CHECK(first_kind(G({{0, 0}}), color_spec(3)) == ViolationKind::empty_region);
}

TEST_CASE("change color audit: geometry frozen, color swapped") {
  Rng rng(0x5eed0002);
  for (int iter = 0; iter < 3000; ++iter) {
    SolidRect s = random_solid_rect(rng);
    int target = rng.uniform(1, 8);
    if (target >= s.color.code()) ++target;  // uniform over the other 8 colors
    const Grid out = apply(s.grid, color_spec(target));
    CHECK(out == rect_grid(s.grid.rows(), s.grid.cols(), s.top, s.left, s.h,
                           s.w, Color(target)));
    // Non-black coordinate sets agree cell for cell.
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c)
        CHECK(out.at(r, c).is_black() == s.grid.at(r, c).is_black());
  }
}

// ---------------------------------------------------------------------- copy

TEST_CASE("copy paints a translated duplicate and keeps the original") {
  CHECK(apply(G({{0, 0}, {4, 0}}), copy_spec(Direction8::up, 1)) ==
        G({{4, 0}, {4, 0}}));
  CHECK(apply(G({{0, 0, 0}, {0, 0, 0}, {3, 0, 0}}),
              copy_spec(Direction8::up_right, 2)) ==
        G({{0, 0, 3}, {0, 0, 0}, {3, 0, 0}}));
}

TEST_CASE("copy with no room reports bounds or overlap") {
  // The whole 2x1 grid is the region: any direction either leaves the grid
  // or lands on the original.
  const Grid g = G({{4}, {4}});
  for (Direction8 d : all_directions8) {
    const ViolationKind kind = first_kind(g, copy_spec(d, 1));
    CHECK((kind == ViolationKind::out_of_bounds ||
           kind == ViolationKind::overlap));
  }
  // In-bounds but touching the original: specifically an overlap.
  CHECK(first_kind(G({{0}, {5}, {5}}), copy_spec(Direction8::up, 1)) ==
        ViolationKind::overlap);
  CHECK(thrown_kind(G({{0}, {5}, {5}}), copy_spec(Direction8::up, 1)) ==
        ViolationKind::overlap);
}

TEST_CASE("copy audit: paint oracle, doubling, closed-form overlap rule") {
  Rng rng(0x5eed0003);
  int valid_cases = 0;
  for (int iter = 0; iter < 12000; ++iter) {
    SolidRect s = random_solid_rect(rng);
    const Direction8 dir = all_directions8[rng.uniform(0, 7)];
    const int steps = rng.uniform(1, 8);
    auto [dr, dc] = delta(dir);
    const int nt = s.top + dr * steps, nl = s.left + dc * steps;
    const bool in_bounds = nt >= 0 && nl >= 0 && nt + s.h <= s.grid.rows() &&
                           nl + s.w <= s.grid.cols();
    // Two axis-aligned rectangles of equal size overlap exactly when the
    // translation is smaller than the extent on both axes.
    const bool overlaps = steps * std::abs(dr) < s.h && steps * std::abs(dc) < s.w;
    const OpSpec spec = copy_spec(dir, steps);
    const auto violations = validate(s.grid, spec);
    CHECK(violations.empty() == (in_bounds && !overlaps));
    if (!violations.empty()) {
      if (!in_bounds)
        CHECK(violations.front().kind == ViolationKind::out_of_bounds);
      else
        CHECK(violations.front().kind == ViolationKind::overlap);
      continue;
    }
    ++valid_cases;
    const Grid out = apply(s.grid, spec);
    Grid expected = s.grid;
    for (int r = nt; r < nt + s.h; ++r)
      for (int c = nl; c < nl + s.w; ++c) expected.set(r, c, s.color);
    CHECK(out == expected);
    CHECK(count_nonblack(out) == 2 * count_nonblack(s.grid));
  }
  CHECK(valid_cases > 600);
}

// -------------------------------------------------------------------- mirror

TEST_CASE("mirror concatenates the reflection on the named side") {
  CHECK(apply(G({{0, 0}, {3, 3}}), mirror_spec(Direction4::up)) ==
        G({{3, 3}, {0, 0}, {0, 0}, {3, 3}}));
  CHECK(apply(G({{5, 0}}), mirror_spec(Direction4::left)) == G({{0, 5, 5, 0}}));
  CHECK(apply(G({{2, 2}}), mirror_spec(Direction4::right)) == G({{2, 2, 2, 2}}));
  CHECK(apply(G({{1}, {0}}), mirror_spec(Direction4::down)) ==
        G({{1}, {0}, {0}, {1}}));
}

TEST_CASE("mirror refuses to double past the grid size cap") {
  const Grid tall(16, 2, Color(3));
  CHECK(first_kind(tall, mirror_spec(Direction4::up)) ==
        ViolationKind::size_overflow);
  CHECK(first_kind(tall, mirror_spec(Direction4::down)) ==
        ViolationKind::size_overflow);
  CHECK(validate(tall, mirror_spec(Direction4::left)).empty());
  const Grid wide(2, 16, Color(3));
  CHECK(first_kind(wide, mirror_spec(Direction4::left)) ==
        ViolationKind::size_overflow);
  CHECK(validate(wide, mirror_spec(Direction4::up)).empty());
  // 15 doubles to exactly 30: allowed.
  CHECK(validate(Grid(15, 1, Color(2)), mirror_spec(Direction4::up)).empty());
}

TEST_CASE("mirror audit: halves, palindrome, and doubling law") {
  Rng rng(0x5eed0004);
  for (int iter = 0; iter < 3000; ++iter) {
    const Grid g = random_noise_grid(rng, 15);
    for (Direction4 d : all_directions4) {
      const bool vertical = d == Direction4::up || d == Direction4::down;
      const Grid out = apply(g, mirror_spec(d));
      CHECK(out.rows() == (vertical ? 2 * g.rows() : g.rows()));
      CHECK(out.cols() == (vertical ? g.cols() : 2 * g.cols()));
      // The original half is a verbatim copy of the input, and the mirrored
      // axis reads the same from both ends.
      const int ro = (d == Direction4::up) ? g.rows() : 0;
      const int co = (d == Direction4::left) ? g.cols() : 0;
      for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
          CHECK(out.at(r + ro, c + co) == g.at(r, c));
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) {
          const int mr = vertical ? out.rows() - 1 - r : r;
          const int mc = vertical ? c : out.cols() - 1 - c;
          CHECK(out.at(r, c) == out.at(mr, mc));
        }
    }
  }
}

// ------------------------------------------------------------- fill internal

TEST_CASE("fill internal paints exactly the enclosed pocket") {
  CHECK(apply(G({{4, 4, 4}, {4, 0, 4}, {4, 4, 4}}), fill_spec(2)) ==
        G({{4, 4, 4}, {4, 2, 4}, {4, 4, 4}}));
  CHECK(apply(G({{3, 3, 3, 3}, {3, 0, 0, 3}, {3, 0, 0, 3}, {3, 3, 3, 3}}),
              fill_spec(6)) ==
        G({{3, 3, 3, 3}, {3, 6, 6, 3}, {3, 6, 6, 3}, {3, 3, 3, 3}}));
}

TEST_CASE("fill internal needs an enclosed black cell and a visible color") {
  CHECK(first_kind(G({{4, 4}, {4, 0}}), fill_spec(2)) ==
        ViolationKind::no_interior);
  CHECK(thrown_kind(G({{4, 4}, {4, 0}}), fill_spec(2)) ==
        ViolationKind::no_interior);
  CHECK(first_kind(G({{4, 4, 4}, {4, 0, 4}, {4, 4, 4}}), fill_spec(0)) ==
        ViolationKind::invalid_spec);
  // A gap in the ring lets the pocket reach the border.
  CHECK(first_kind(G({{4, 0, 4}, {4, 0, 4}, {4, 4, 4}}), fill_spec(2)) ==
        ViolationKind::no_interior);
}

TEST_CASE("fill internal audit: changes the interior set and nothing else") {
  Rng rng(0x5eed0005);
  int filled = 0;
  for (int iter = 0; iter < 6000; ++iter) {
    const Grid g = random_noise_grid(rng, 10, 4);
    const auto interior = enclosed_black_interior(g);
    const Color fill(rng.uniform(1, 9));
    const OpSpec spec = fill_spec(fill.code());
    if (interior.empty()) {
      CHECK(first_kind(g, spec) == ViolationKind::no_interior);
      continue;
    }
    ++filled;
    const Grid out = apply(g, spec);
    Grid expected = g;
    for (const Cell& cell : interior) expected.set(cell, fill);
    CHECK(out == expected);
  }
  CHECK(filled > 500);
}

// --------------------------------------------------------------------- scale

TEST_CASE("scale tiles copies where cells are colored and voids elsewhere") {
  CHECK(apply(G({{3, 0}, {0, 3}}), scale_spec()) ==
        G({{3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}}));
  CHECK(apply(G({{0, 0}, {0, 0}}), scale_spec()) == Grid(4, 4));
  CHECK(apply(G({{7, 7}, {7, 7}}), scale_spec()) == Grid(4, 4, Color(7)));
}

TEST_CASE("scale refuses grids whose square blows the size cap") {
  CHECK(first_kind(Grid(6, 2, Color(1)), scale_spec()) ==
        ViolationKind::size_overflow);
  CHECK(first_kind(Grid(2, 6, Color(1)), scale_spec()) ==
        ViolationKind::size_overflow);
  CHECK(validate(Grid(5, 5, Color(1)), scale_spec()).empty());  // 25 <= 30
}

TEST_CASE("scale audit: brute-force block comparison") {
  Rng rng(0x5eed0006);
  for (int iter = 0; iter < 4000; ++iter) {
    const Grid g = random_noise_grid(rng, 5);
    const int a = g.rows(), b = g.cols();
    const Grid out = apply(g, scale_spec());
    REQUIRE(out.rows() == a * a);
    REQUIRE(out.cols() == b * b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        const bool lit = !g.at(i, j).is_black();
        for (int r = 0; r < a; ++r)
          for (int c = 0; c < b; ++c) {
            const Color want = lit ? g.at(r, c) : Color::black();
            CHECK(out.at(i * a + r, j * b + c) == want);
          }
      }
  }
}

// --------------------------------------------------------------- composition

TEST_CASE("composition chains steps through the most recent region") {
  // The duplicate lands two rows up, then that duplicate (not the original)
  // shifts right.
  CHECK(apply(G({{0, 0, 0}, {0, 0, 0}, {5, 0, 0}}),
              OpSpec{ComposeOp{{copy_spec(Direction8::up, 2),
                                move_spec(Direction8::right, 1)}}}) ==
        G({{0, 5, 0}, {0, 0, 0}, {5, 0, 0}}));
  // Move then recolor: the recolor hits the moved block.
  CHECK(apply(G({{0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
              OpSpec{ComposeOp{{move_spec(Direction8::down, 1), color_spec(2)}}}) ==
        G({{0, 0, 0, 0}, {0, 2, 2, 0}, {0, 2, 2, 0}, {0, 0, 0, 0}}));
}

TEST_CASE("a length-one composition behaves exactly like its bare step") {
  Rng rng(0x5eed0007);
  for (int iter = 0; iter < 500; ++iter) {
    SolidRect s = random_solid_rect(rng, 1, 8);
    const Direction8 dir = all_directions8[rng.uniform(0, 7)];
    const int steps = rng.uniform(1, 4);
    const OpSpec bare = copy_spec(dir, steps);
    const OpSpec wrapped{ComposeOp{{bare}}};
    const auto bare_violations = validate(s.grid, bare);
    const auto wrapped_violations = validate(s.grid, wrapped);
    REQUIRE(bare_violations.empty() == wrapped_violations.empty());
    if (bare_violations.empty())
      CHECK(apply(s.grid, bare) == apply(s.grid, wrapped));
    else
      CHECK(bare_violations.front().kind == wrapped_violations.front().kind);
  }
}

TEST_CASE("whole-grid steps reset the target to the fresh grid's region") {
  // After mirroring, the two cells merge into one region; the move targets it.
  CHECK(apply(G({{0, 3}, {0, 0}}),
              OpSpec{ComposeOp{{mirror_spec(Direction4::right),
                                move_spec(Direction8::down, 1)}}}) ==
        G({{0, 0, 0, 0}, {0, 3, 3, 0}}));
  // When the mirror leaves two separate parts, the follow-up is ambiguous.
  const Grid g = G({{0, 0}, {0, 3}});
  const OpSpec spec{ComposeOp{
      {mirror_spec(Direction4::up), move_spec(Direction8::left, 1)}}};
  const auto violations = validate(g, spec);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().kind == ViolationKind::ambiguous_region);
  CHECK(violations.front().step == 1);
}

TEST_CASE("composition failures carry the index of the failing step") {
  const Grid g = G({{0}, {5}});
  const OpSpec spec{ComposeOp{
      {move_spec(Direction8::up, 1), move_spec(Direction8::up, 1)}}};
  const auto violations = validate(g, spec);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().kind == ViolationKind::out_of_bounds);
  CHECK(violations.front().step == 1);
  try {
    (void)apply(g, spec);
    FAIL("expected the second step to fail");
  } catch (const ApplyError& e) {
    CHECK(e.violation().step == 1);
  }
}

TEST_CASE("empty and nested compositions are invalid specs") {
  const Grid g = G({{0, 4}});
  CHECK(first_kind(g, OpSpec{ComposeOp{{}}}) == ViolationKind::invalid_spec);
  const OpSpec inner{ComposeOp{{move_spec(Direction8::left, 1)}}};
  CHECK(first_kind(g, OpSpec{ComposeOp{{inner, color_spec(2)}}}) ==
        ViolationKind::invalid_spec);
}

TEST_CASE("composition audit: duplicate-then-move matches direct painting") {
  Rng rng(0x5eed0008);
  int performed = 0;
  for (int iter = 0; iter < 30000; ++iter) {
    SolidRect s = random_solid_rect(rng);
    const Direction8 d1 = all_directions8[rng.uniform(0, 7)];
    const Direction8 d2 = all_directions8[rng.uniform(0, 7)];
    const int s1 = rng.uniform(1, 8), s2 = rng.uniform(1, 8);
    const OpSpec spec{ComposeOp{{copy_spec(d1, s1), move_spec(d2, s2)}}};
    if (!validate(s.grid, spec).empty()) continue;
    auto [d1r, d1c] = delta(d1);
    auto [d2r, d2c] = delta(d2);
    Grid expected = rect_grid(s.grid.rows(), s.grid.cols(), s.top, s.left, s.h,
                              s.w, s.color);
    const int ft = s.top + d1r * s1 + d2r * s2;
    const int fl = s.left + d1c * s1 + d2c * s2;
    for (int r = ft; r < ft + s.h; ++r)
      for (int c = fl; c < fl + s.w; ++c) expected.set(r, c, s.color);
    CHECK(apply(s.grid, spec) == expected);
    ++performed;
  }
  CHECK(performed > 400);
}

// -------------------------------------------------- validate/apply agreement

TEST_CASE("validate predicts apply exactly across random grids and rules") {
  Rng rng(0x5eed0009);
  std::map<ViolationKind, int> seen;
  int agreements = 0;
  for (int iter = 0; iter < 12000; ++iter) {
    // Mix totally random grids (multi-part, sometimes blank) with solid
    // rectangles so both failure and success paths get heavy traffic.
    Grid g = (iter % 3 == 0) ? random_noise_grid(rng, 16, 7)
                             : random_solid_rect(rng, 1, 16).grid;
    OpSpec spec = scale_spec();
    switch (rng.uniform(0, 6)) {
      case 0:
        spec = move_spec(all_directions8[rng.uniform(0, 7)], rng.uniform(1, 8));
        break;
      case 1:
        spec = color_spec(rng.uniform(1, 9));
        break;
      case 2:
        spec = copy_spec(all_directions8[rng.uniform(0, 7)], rng.uniform(1, 8));
        break;
      case 3:
        spec = mirror_spec(all_directions4[rng.uniform(0, 3)]);
        break;
      case 4:
        spec = fill_spec(rng.uniform(1, 9));
        break;
      case 5:
        spec = scale_spec();
        break;
      case 6:
        spec = OpSpec{ComposeOp{
            {copy_spec(all_directions8[rng.uniform(0, 7)], rng.uniform(1, 8)),
             move_spec(all_directions8[rng.uniform(0, 7)], rng.uniform(1, 8))}}};
        break;
    }
    const auto violations = validate(g, spec);
    if (violations.empty()) {
      CHECK_NOTHROW(apply(g, spec));
      ++agreements;
    } else {
      seen[violations.front().kind]++;
      try {
        (void)apply(g, spec);
        FAIL("validate reported a violation but apply succeeded");
      } catch (const ApplyError& e) {
        CHECK(e.violation().kind == violations.front().kind);
        CHECK(e.violation().step == violations.front().step);
      }
    }
  }
  CHECK(agreements > 1000);
  // The audit must have exercised the whole failure taxonomy.
  CHECK(seen[ViolationKind::out_of_bounds] > 0);
  CHECK(seen[ViolationKind::overlap] > 0);
  CHECK(seen[ViolationKind::empty_region] > 0);
  CHECK(seen[ViolationKind::ambiguous_region] > 0);
  CHECK(seen[ViolationKind::same_color] > 0);
  CHECK(seen[ViolationKind::no_interior] > 0);
  CHECK(seen[ViolationKind::size_overflow] > 0);
}
