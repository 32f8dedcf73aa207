// gen.hpp — seeded task generators: the 600-task benchmark, the controlled
// direction/steps variants, halved-size tasks, mirror left/right duos,
// two-step compositions, and fine-tune corpora. Every task is derived from a
// per-task seed mixed out of (master seed, variant, family, index, attempt),
// so output is byte-identical no matter how work is scheduled across threads.
#pragma once

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "araoc/grid.hpp"
#include "araoc/json_io.hpp"
#include "araoc/ops.hpp"
#include "araoc/rng.hpp"
#include "araoc/task.hpp"

namespace araoc {

enum class Family { move, change_color, copy, mirror, fill_internal, scale };

inline constexpr std::array<Family, 6> all_families = {
    Family::move,   Family::change_color, Family::copy,
    Family::mirror, Family::fill_internal, Family::scale};

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::move: return "move";
    case Family::change_color: return "change_color";
    case Family::copy: return "copy";
    case Family::mirror: return "mirror";
    case Family::fill_internal: return "fill_internal";
    case Family::scale: return "scale";
  }
  return "";
}

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : all_families)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

// Retry budget exhausted: the requested ranges admit no valid sample.
class GenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampling ranges. Defaults cover the standard benchmark; the small variant
// halves the grid and step ranges.
struct GenRanges {
  int grid_lo = 1, grid_hi = 16;          // move/copy/change_color/mirror
  int steps_lo = 1, steps_hi = 8;         // move/copy step counts
  int fill_grid_lo = 3, fill_grid_hi = 16;  // fill_internal grids
  int scale_grid_lo = 2, scale_grid_hi = 5;  // scale grids

  static GenRanges standard() { return {}; }
  static GenRanges small() {
    GenRanges r;
    r.grid_lo = 1;
    r.grid_hi = 8;
    // Steps halve along with the grids: an 8-step move can never fit inside
    // an 8-cell axis, so keeping [1,8] would exhaust every retry budget.
    r.steps_lo = 1;
    r.steps_hi = 4;
    return r;
  }
};

inline constexpr int retry_budget_per_task = 1000;

namespace detail {

inline std::string zero_pad(int value, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*d", width, value);
  return buf;
}

// ------------------------------------------------------------ input sampling

struct RectPlacement {
  int r0, c0;
};

// Solid single-color rectangle on a black grid.
inline Grid solid_rect_grid(int rows, int cols, int r0, int c0, int h, int w,
                            Color color) {
  Grid g(rows, cols);
  for (int r = r0; r < r0 + h; ++r)
    for (int c = c0; c < c0 + w; ++c) g.set(r, c, color);
  return g;
}

// Positions (top-left corners) where an h x w rectangle fits and `rule`
// applies to it. Only meaningful for the region-targeted single ops; mirror
// imposes no positional constraint.
inline std::vector<RectPlacement> feasible_positions(int rows, int cols, int h,
                                                     int w, const OpSpec& rule) {
  int r0_lo = 0, r0_hi = rows - h, c0_lo = 0, c0_hi = cols - w;
  if (const auto* move = std::get_if<MoveOp>(&rule.op)) {
    auto [dr, dc] = delta(move->direction);
    dr *= move->steps;
    dc *= move->steps;
    r0_lo = std::max(r0_lo, -dr);
    r0_hi = std::min(r0_hi, rows - h - dr);
    c0_lo = std::max(c0_lo, -dc);
    c0_hi = std::min(c0_hi, cols - w - dc);
  } else if (const auto* copy = std::get_if<CopyOp>(&rule.op)) {
    auto [dr, dc] = delta(copy->direction);
    const int sr = std::abs(dr) * copy->steps, sc = std::abs(dc) * copy->steps;
    if (sr < h && sc < w) return {};  // copy always overlaps the source
    dr *= copy->steps;
    dc *= copy->steps;
    r0_lo = std::max(r0_lo, -dr);
    r0_hi = std::min(r0_hi, rows - h - dr);
    c0_lo = std::max(c0_lo, -dc);
    c0_hi = std::min(c0_hi, cols - w - dc);
  }
  std::vector<RectPlacement> positions;
  for (int r0 = r0_lo; r0 <= r0_hi; ++r0)
    for (int c0 = c0_lo; c0 <= c0_hi; ++c0) positions.push_back({r0, c0});
  return positions;
}

// Uniform color from 1..9, optionally excluding one foreground color.
inline Color sample_color(Rng& rng, std::optional<Color> exclude = {}) {
  if (!exclude || exclude->is_black()) return Color(rng.uniform(1, 9));
  int code = rng.uniform(1, 8);
  if (code >= exclude->code()) ++code;
  return Color(code);
}

// One attempt at an input grid for the given family/rule; nullopt when the
// dimension draw admits no valid placement (caller retries with fresh draws).
inline std::optional<Grid> try_sample_input(Family family, const OpSpec& rule,
                                            const GenRanges& ranges, Rng& rng) {
  switch (family) {
    case Family::move:
    case Family::change_color:
    case Family::copy:
    case Family::mirror: {
      const int rows = rng.uniform(ranges.grid_lo, ranges.grid_hi);
      const int cols = rng.uniform(ranges.grid_lo, ranges.grid_hi);
      const int m = std::min(rows, cols);
      const int h = rng.uniform(1, m), w = rng.uniform(1, m);
      Color color;
      if (const auto* cc = std::get_if<ChangeColorOp>(&rule.op))
        color = sample_color(rng, cc->target);
      else
        color = sample_color(rng);
      if (const auto* mirror = std::get_if<MirrorOp>(&rule.op)) {
        const bool vertical = mirror->direction == Direction4::up ||
                              mirror->direction == Direction4::down;
        if (2 * (vertical ? rows : cols) > max_grid_dim) return std::nullopt;
      }
      auto positions = feasible_positions(rows, cols, h, w, rule);
      if (positions.empty()) return std::nullopt;
      const RectPlacement& pos =
          positions[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(positions.size()) - 1))];
      return solid_rect_grid(rows, cols, pos.r0, pos.c0, h, w, color);
    }
    case Family::fill_internal: {
      const int rows = rng.uniform(ranges.fill_grid_lo, ranges.fill_grid_hi);
      const int cols = rng.uniform(ranges.fill_grid_lo, ranges.fill_grid_hi);
      const int m = std::min(rows, cols);
      const int h = rng.uniform(3, m), w = rng.uniform(3, m);
      const auto& fill = std::get<FillInternalOp>(rule.op);
      const Color ring = sample_color(rng, fill.fill);
      const int r0 = rng.uniform(0, rows - h), c0 = rng.uniform(0, cols - w);
      Grid g(rows, cols);
      for (int r = r0; r < r0 + h; ++r) {
        g.set(r, c0, ring);
        g.set(r, c0 + w - 1, ring);
      }
      for (int c = c0; c < c0 + w; ++c) {
        g.set(r0, c, ring);
        g.set(r0 + h - 1, c, ring);
      }
      return g;
    }
    case Family::scale: {
      const int rows = rng.uniform(ranges.scale_grid_lo, ranges.scale_grid_hi);
      const int cols = rng.uniform(ranges.scale_grid_lo, ranges.scale_grid_hi);
      const Color color = sample_color(rng);
      Grid g(rows, cols);
      int colored = 0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          if (rng.coin()) {
            g.set(r, c, color);
            ++colored;
          }
      if (colored == 0 || colored == rows * cols) return std::nullopt;
      return g;
    }
  }
  return std::nullopt;
}

// Row/column travel of a two-step composition: how much space (beyond the
// rectangle itself) the copy-then-move trajectory needs along each axis.
struct ComposeSpan {
  int d1r, d1c;  // copy displacement
  int d2r, d2c;  // move displacement applied to the copy
  int row_travel, col_travel;
};

inline ComposeSpan compose_span(const ComposeOp& rule) {
  const auto& copy = std::get<CopyOp>(rule.steps[0].op);
  const auto& move = std::get<MoveOp>(rule.steps[1].op);
  auto [cdr, cdc] = delta(copy.direction);
  auto [mdr, mdc] = delta(move.direction);
  ComposeSpan s{cdr * copy.steps, cdc * copy.steps, mdr * move.steps,
                mdc * move.steps, 0, 0};
  s.row_travel = std::max({0, s.d1r, s.d1r + s.d2r}) -
                 std::min({0, s.d1r, s.d1r + s.d2r});
  s.col_travel = std::max({0, s.d1c, s.d1c + s.d2c}) -
                 std::min({0, s.d1c, s.d1c + s.d2c});
  return s;
}

// A composition rule is hostable when some grid within the range can hold the
// whole trajectory and the moved copy can avoid the source rectangle.
inline bool compose_rule_hostable(const ComposeOp& rule, const GenRanges& r) {
  const ComposeSpan s = compose_span(rule);
  if (s.d1r + s.d2r == 0 && s.d1c + s.d2c == 0) return false;  // lands on source
  return s.row_travel < r.grid_hi && s.col_travel < r.grid_hi;
}

// Composition inputs: a rectangle whose copy stays in bounds and off the
// source, whose moved copy also stays in bounds, and whose final position
// leaves the original rectangle untouched (merged blobs make poor tasks).
// Dimensions are drawn from the exact support admitted by the trajectory
// (equivalent to rejecting out-of-range draws, just without the waste).
inline std::optional<Grid> try_sample_compose_input(const ComposeOp& rule,
                                                    const GenRanges& ranges,
                                                    Rng& rng) {
  const ComposeSpan s = compose_span(rule);
  if (s.row_travel >= ranges.grid_hi || s.col_travel >= ranges.grid_hi)
    return std::nullopt;
  const int rows =
      rng.uniform(std::max(ranges.grid_lo, s.row_travel + 1), ranges.grid_hi);
  const int cols =
      rng.uniform(std::max(ranges.grid_lo, s.col_travel + 1), ranges.grid_hi);
  const int m = std::min(rows, cols);
  const int h = rng.uniform(1, std::min(m, rows - s.row_travel));
  const int w = rng.uniform(1, std::min(m, cols - s.col_travel));
  if (std::abs(s.d1r) < h && std::abs(s.d1c) < w) return std::nullopt;

  std::vector<RectPlacement> positions;
  for (int r0 = 0; r0 + h <= rows; ++r0)
    for (int c0 = 0; c0 + w <= cols; ++c0) {
      const int r1 = r0 + s.d1r, c1 = c0 + s.d1c;  // the copy
      const int r2 = r1 + s.d2r, c2 = c1 + s.d2c;  // the copy after the move
      if (r1 < 0 || r1 + h > rows || c1 < 0 || c1 + w > cols) continue;
      if (r2 < 0 || r2 + h > rows || c2 < 0 || c2 + w > cols) continue;
      const bool hits_original = r2 < r0 + h && r0 < r2 + h &&  // row overlap
                                 c2 < c0 + w && c0 < c2 + w;    // col overlap
      if (hits_original) continue;
      positions.push_back({r0, c0});
    }
  if (positions.empty()) return std::nullopt;
  const RectPlacement& pos =
      positions[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(positions.size()) - 1))];
  return solid_rect_grid(rows, cols, pos.r0, pos.c0, h, w, sample_color(rng));
}

// ------------------------------------------------------------- task assembly

inline OpSpec sample_rule(Family family, const GenRanges& ranges, Rng& rng) {
  switch (family) {
    case Family::move:
      return OpSpec{MoveOp{rng.pick(std::vector<Direction8>(
                               all_directions8.begin(), all_directions8.end())),
                           rng.uniform(ranges.steps_lo, ranges.steps_hi)}};
    case Family::change_color:
      return OpSpec{ChangeColorOp{sample_color(rng)}};
    case Family::copy:
      return OpSpec{CopyOp{rng.pick(std::vector<Direction8>(
                               all_directions8.begin(), all_directions8.end())),
                           rng.uniform(ranges.steps_lo, ranges.steps_hi)}};
    case Family::mirror:
      return OpSpec{MirrorOp{rng.pick(std::vector<Direction4>(
          all_directions4.begin(), all_directions4.end()))}};
    case Family::fill_internal:
      return OpSpec{FillInternalOp{sample_color(rng)}};
    case Family::scale:
      return OpSpec{ScaleOp{}};
  }
  return OpSpec{ScaleOp{}};
}

// Samples one pair whose input differs from every grid in `taken`; counts
// failed attempts against the shared per-task budget.
inline GridPair sample_distinct_pair(Family family, const OpSpec& rule,
                                     const GenRanges& ranges, Rng& rng,
                                     std::vector<Grid>& taken, int& budget,
                                     const std::string& id) {
  while (budget > 0) {
    --budget;
    std::optional<Grid> input =
        std::holds_alternative<ComposeOp>(rule.op)
            ? try_sample_compose_input(std::get<ComposeOp>(rule.op), ranges, rng)
            : try_sample_input(family, rule, ranges, rng);
    if (!input) continue;
    bool duplicate = false;
    for (const Grid& prior : taken)
      if (prior == *input) {
        duplicate = true;
        break;
      }
    if (duplicate) continue;
    Grid output = apply(*input, rule);
    taken.push_back(*input);
    return GridPair{std::move(*input), std::move(output)};
  }
  throw GenError("retry budget exhausted while sampling " + id);
}

inline Task assemble_task(Family family, const OpSpec& rule,
                          const GenRanges& ranges, Rng& rng,
                          std::uint64_t seed, std::string id,
                          std::string variant) {
  int budget = retry_budget_per_task;
  std::vector<Grid> taken;
  std::vector<GridPair> train;
  for (int i = 0; i < 3; ++i)
    train.push_back(
        sample_distinct_pair(family, rule, ranges, rng, taken, budget, id));
  GridPair test =
      sample_distinct_pair(family, rule, ranges, rng, taken, budget, id);
  Task task{std::move(id),
            std::string(family_name(rule)),
            rule,
            std::move(train),
            std::move(test),
            TaskMeta{seed, std::string(generator_version), std::move(variant),
                     std::nullopt, std::nullopt}};
  return task;
}

inline Task gen_task_seeded(Family family, std::uint64_t seed, std::string id,
                            std::string variant, const GenRanges& ranges) {
  Rng rng(seed);
  OpSpec rule = sample_rule(family, ranges, rng);
  return assemble_task(family, rule, ranges, rng, seed, std::move(id),
                       std::move(variant));
}

// Deterministic parallel fill: worker w handles indices w, w+workers, ... so
// every slot is written exactly once; results depend only on per-slot seeds.
template <class Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const int pool_size = std::min(workers, n);
  pool.reserve(static_cast<std::size_t>(pool_size));
  for (int w = 0; w < pool_size; ++w)
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

// One task from the current generator state (seed drawn from `rng`).
inline Task gen_task(Family family, Rng& rng,
                     const GenRanges& ranges = GenRanges::standard()) {
  const std::uint64_t seed = rng.next();
  char id[32];
  std::snprintf(id, sizeof id, "%s-%016llx", std::string(to_string(family)).c_str(),
                static_cast<unsigned long long>(seed));
  return detail::gen_task_seeded(family, seed, id, "adhoc", ranges);
}

namespace detail {

// Shared scaffold for the per-index generators: parallel generation followed
// by a sequential dedup sweep (content collisions are regenerated with a
// bumped attempt counter, which keeps the result order- and
// worker-independent).
template <class MakeTask>
std::vector<Task> generate_indexed(int count, int workers, MakeTask&& make,
                                   std::set<std::string>* exclude_keys = nullptr) {
  std::vector<std::optional<Task>> slots(static_cast<std::size_t>(count));
  parallel_for(count, workers,
               [&](int i) { slots[static_cast<std::size_t>(i)] = make(i, 0); });
  std::set<std::string> seen;
  if (exclude_keys) seen = *exclude_keys;
  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Task task = std::move(*slots[static_cast<std::size_t>(i)]);
    int attempt = 0;
    while (!seen.insert(task_content_key(task)).second) {
      ++attempt;
      if (attempt > retry_budget_per_task)
        throw GenError("could not find a content-unique task for " + task.id);
      task = make(i, attempt);
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace detail

// The standard benchmark: `per_family` tasks for each of the six families.
inline Benchmark gen_benchmark(std::uint64_t master_seed, int per_family = 100,
                               int workers = 1) {
  Benchmark bench{master_seed, std::string(generator_version), {}};
  const std::uint64_t variant_tag = fnv1a64("standard");
  for (Family family : all_families) {
    const std::uint64_t family_tag = fnv1a64(to_string(family));
    auto make = [&](int i, int attempt) {
      const std::uint64_t seed =
          mix_seed({master_seed, variant_tag, family_tag,
                    static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt)});
      return detail::gen_task_seeded(
          family, seed,
          std::string(to_string(family)) + "-" + detail::zero_pad(i, 4),
          "standard", GenRanges::standard());
    };
    std::vector<Task> tasks = detail::generate_indexed(per_family, workers, make);
    for (Task& task : tasks) bench.tasks.push_back(std::move(task));
  }
  return bench;
}

// Controlled direction/steps study: 50 base grids, each valid for every
// (direction, steps) in {up, up_right} x {1,2,3}; the six tasks of a base
// grid share its test input and are tagged with their combination.
inline std::vector<Task> gen_controlled(Family family, std::uint64_t master_seed,
                                        int workers = 1) {
  if (family != Family::move && family != Family::copy)
    throw std::invalid_argument("controlled variant supports move and copy only");
  const GenRanges ranges = GenRanges::standard();
  constexpr int n_bases = 50;
  const std::array<Direction8, 2> directions = {Direction8::up,
                                                Direction8::up_right};
  const std::array<int, 3> step_counts = {1, 2, 3};

  auto rule_for = [&](int combo) -> OpSpec {
    const Direction8 d = directions[static_cast<std::size_t>(combo / 3)];
    const int steps = step_counts[static_cast<std::size_t>(combo % 3)];
    if (family == Family::move) return OpSpec{MoveOp{d, steps}};
    return OpSpec{CopyOp{d, steps}};
  };
  auto combo_tag = [&](int combo) {
    const Direction8 d = directions[static_cast<std::size_t>(combo / 3)];
    return std::string(to_string(d)) + "-" +
           std::to_string(step_counts[static_cast<std::size_t>(combo % 3)]);
  };

  const std::uint64_t variant_tag = fnv1a64("controlled");
  const std::uint64_t family_tag = fnv1a64(to_string(family));

  // Base grids first: a placement must be feasible under all six rules.
  std::vector<std::optional<Grid>> bases(n_bases);
  detail::parallel_for(n_bases, workers, [&](int i) {
    Rng rng(mix_seed({master_seed, variant_tag, family_tag,
                      static_cast<std::uint64_t>(i), fnv1a64("base")}));
    for (int attempt = 0; attempt < retry_budget_per_task; ++attempt) {
      const int rows = rng.uniform(ranges.grid_lo, ranges.grid_hi);
      const int cols = rng.uniform(ranges.grid_lo, ranges.grid_hi);
      const int m = std::min(rows, cols);
      const int h = rng.uniform(1, m), w = rng.uniform(1, m);
      std::vector<detail::RectPlacement> positions;
      for (int combo = 0; combo < 6; ++combo) {
        auto combo_positions =
            detail::feasible_positions(rows, cols, h, w, rule_for(combo));
        if (combo == 0) {
          positions = std::move(combo_positions);
        } else {
          std::vector<detail::RectPlacement> kept;
          for (const auto& p : positions)
            for (const auto& q : combo_positions)
              if (p.r0 == q.r0 && p.c0 == q.c0) {
                kept.push_back(p);
                break;
              }
          positions = std::move(kept);
        }
        if (positions.empty()) break;
      }
      if (positions.empty()) continue;
      const auto& pos =
          positions[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(positions.size()) - 1))];
      bases[static_cast<std::size_t>(i)] = detail::solid_rect_grid(
          rows, cols, pos.r0, pos.c0, h, w, detail::sample_color(rng));
      return;
    }
    throw GenError("retry budget exhausted for controlled base grid " +
                   std::to_string(i));
  });

  std::vector<std::optional<Task>> slots(n_bases * 6);
  detail::parallel_for(n_bases * 6, workers, [&](int slot) {
    const int i = slot / 6, combo = slot % 6;
    const OpSpec rule = rule_for(combo);
    const std::uint64_t seed =
        mix_seed({master_seed, variant_tag, family_tag,
                  static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(combo)});
    Rng rng(seed);
    const Grid& base = *bases[static_cast<std::size_t>(i)];
    int budget = retry_budget_per_task;
    std::vector<Grid> taken{base};  // train inputs must differ from the base
    std::vector<GridPair> train;
    const std::string id = "controlled-" + std::string(to_string(family)) +
                           "-b" + detail::zero_pad(i, 2) + "-" + combo_tag(combo);
    for (int t = 0; t < 3; ++t)
      train.push_back(detail::sample_distinct_pair(family, rule, ranges, rng,
                                                   taken, budget, id));
    Task task{id,
              std::string(family_name(rule)),
              rule,
              std::move(train),
              GridPair{base, apply(base, rule)},
              TaskMeta{seed, std::string(generator_version), "controlled",
                       std::nullopt, combo_tag(combo)}};
    slots[static_cast<std::size_t>(slot)] = std::move(task);
  });

  std::vector<Task> tasks;
  tasks.reserve(slots.size());
  for (auto& slot : slots) tasks.push_back(std::move(*slot));
  return tasks;
}

// Halved-range variant of the standard generator (move/copy studies).
inline std::vector<Task> gen_small(Family family, std::uint64_t master_seed,
                                   int count = 100, int workers = 1) {
  const std::uint64_t variant_tag = fnv1a64("small");
  const std::uint64_t family_tag = fnv1a64(to_string(family));
  auto make = [&](int i, int attempt) {
    const std::uint64_t seed =
        mix_seed({master_seed, variant_tag, family_tag,
                  static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt)});
    return detail::gen_task_seeded(
        family, seed,
        "small-" + std::string(to_string(family)) + "-" + detail::zero_pad(i, 4),
        "small", GenRanges::small());
  };
  return detail::generate_indexed(count, workers, make);
}

// Mirror study: `count` base grids with dims in [3,7]; each yields a Left and
// a Right task sharing the base grid as test input, linked by meta.pair_id.
inline std::vector<Task> gen_mirror_pairs(std::uint64_t master_seed,
                                          int count = 100, int workers = 1) {
  GenRanges ranges;
  ranges.grid_lo = 3;
  ranges.grid_hi = 7;
  const std::uint64_t variant_tag = fnv1a64("mirror_lr");
  std::vector<std::optional<Task>> slots(static_cast<std::size_t>(count) * 2);
  detail::parallel_for(count * 2, workers, [&](int slot) {
    const int i = slot / 2;
    const bool left = slot % 2 == 0;
    const OpSpec rule{MirrorOp{left ? Direction4::left : Direction4::right}};
    const std::string pair_id = "mirror-lr-" + detail::zero_pad(i, 4);

    // The shared test input comes from a pair-level stream so both sides see
    // the same base grid.
    Rng base_rng(mix_seed({master_seed, variant_tag,
                           static_cast<std::uint64_t>(i), fnv1a64("base")}));
    std::optional<Grid> base;
    for (int attempt = 0; attempt < retry_budget_per_task && !base; ++attempt)
      base = detail::try_sample_input(Family::mirror, rule, ranges, base_rng);
    if (!base)
      throw GenError("retry budget exhausted for mirror base grid " +
                     std::to_string(i));

    const std::uint64_t seed =
        mix_seed({master_seed, variant_tag, static_cast<std::uint64_t>(i),
                  static_cast<std::uint64_t>(left ? 0 : 1)});
    Rng rng(seed);
    int budget = retry_budget_per_task;
    std::vector<Grid> taken{*base};
    std::vector<GridPair> train;
    const std::string id = pair_id + (left ? "-left" : "-right");
    for (int t = 0; t < 3; ++t)
      train.push_back(detail::sample_distinct_pair(Family::mirror, rule, ranges,
                                                   rng, taken, budget, id));
    Task task{id,
              "mirror",
              rule,
              std::move(train),
              GridPair{*base, apply(*base, rule)},
              TaskMeta{seed, std::string(generator_version), "mirror_lr",
                       pair_id, std::nullopt}};
    slots[static_cast<std::size_t>(slot)] = std::move(task);
  });
  std::vector<Task> tasks;
  tasks.reserve(slots.size());
  for (auto& slot : slots) tasks.push_back(std::move(*slot));
  return tasks;
}

// Two-step compositions: Copy(d1, s1) then Move(d2, s2) applied to the copy.
inline std::vector<Task> gen_composition(std::uint64_t master_seed,
                                         int count = 100, int workers = 1) {
  const GenRanges ranges = GenRanges::standard();
  const std::uint64_t variant_tag = fnv1a64("composition");
  auto make = [&](int i, int attempt) {
    const std::uint64_t seed =
        mix_seed({master_seed, variant_tag, static_cast<std::uint64_t>(i),
                  static_cast<std::uint64_t>(attempt)});
    Rng rng(seed);
    const std::vector<Direction8> dirs(all_directions8.begin(),
                                       all_directions8.end());
    ComposeOp compose;
    for (int tries = 0;; ++tries) {
      compose.steps.clear();
      compose.steps.push_back(OpSpec{CopyOp{
          rng.pick(dirs), rng.uniform(ranges.steps_lo, ranges.steps_hi)}});
      compose.steps.push_back(OpSpec{MoveOp{
          rng.pick(dirs), rng.uniform(ranges.steps_lo, ranges.steps_hi)}});
      if (detail::compose_rule_hostable(compose, ranges)) break;
      if (tries >= retry_budget_per_task)
        throw GenError("no hostable composition rule for compose task " +
                       std::to_string(i));
    }
    OpSpec rule{std::move(compose)};
    return detail::assemble_task(Family::move /*unused*/, rule, ranges, rng,
                                 seed, "compose-" + detail::zero_pad(i, 4),
                                 "composition");
  };
  return detail::generate_indexed(count, workers, make);
}

// Fine-tune corpus: per-family counts, content-disjoint from `exclude`.
inline std::vector<Task> gen_finetune_corpus(
    const std::vector<std::pair<Family, int>>& counts,
    const std::vector<Task>& exclude, std::uint64_t master_seed,
    int workers = 1) {
  std::set<std::string> exclude_keys;
  for (const Task& task : exclude) exclude_keys.insert(task_content_key(task));
  const std::uint64_t variant_tag = fnv1a64("finetune");
  std::vector<Task> corpus;
  for (const auto& [family, count] : counts) {
    if (count < 1) throw std::invalid_argument("finetune counts must be >= 1");
    const std::uint64_t family_tag = fnv1a64(to_string(family));
    auto make = [&, family = family](int i, int attempt) {
      const std::uint64_t seed =
          mix_seed({master_seed, variant_tag, family_tag,
                    static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt)});
      return detail::gen_task_seeded(
          family, seed,
          "ft-" + std::string(to_string(family)) + "-" + detail::zero_pad(i, 4),
          "finetune", GenRanges::standard());
    };
    std::vector<Task> tasks =
        detail::generate_indexed(count, workers, make, &exclude_keys);
    for (Task& task : tasks) {
      exclude_keys.insert(task_content_key(task));  // stay internally distinct
      corpus.push_back(std::move(task));
    }
  }
  return corpus;
}

// --------------------------------------------------------------- ARC loading

namespace detail {

inline std::vector<Task> arc_tasks_from_json(const json& j,
                                             const std::string& file_label) {
  if (!j.is_object() || !j.contains("train") || !j.contains("test") ||
      !j["train"].is_array() || !j["test"].is_array() || j["test"].empty())
    throw DataError(file_label + ": expected an object with train/test arrays");
  std::vector<GridPair> train;
  int i = 0;
  for (const json& pair : j["train"])
    train.push_back(
        pair_from_json(pair, file_label + ".train[" + std::to_string(i++) + "]"));
  std::vector<Task> tasks;
  const bool multi = j["test"].size() > 1;
  i = 0;
  for (const json& pair : j["test"]) {
    GridPair test =
        pair_from_json(pair, file_label + ".test[" + std::to_string(i) + "]");
    std::string id = file_label;
    if (multi) id += "-t" + std::to_string(i);
    tasks.push_back(Task{std::move(id), "arc", std::nullopt, train,
                         std::move(test),
                         TaskMeta{0, std::string{}, "arc", std::nullopt,
                                  std::nullopt}});
    ++i;
  }
  return tasks;
}

}  // namespace detail

// Loads tasks in the public ARC layout: one JSON object per file with train
// and test pair arrays. `path` may be a single file or a directory of .json
// files; a file holding several test pairs yields one task per test pair.
inline std::vector<Task> load_arc_tasks(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw DataError("no .json task files in " + path.string());
  } else {
    files.push_back(path);
  }
  std::vector<Task> tasks;
  for (const fs::path& file : files) {
    json j = parse_json_file(file);
    std::vector<Task> loaded =
        detail::arc_tasks_from_json(j, file.stem().string());
    for (Task& task : loaded) tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace araoc
