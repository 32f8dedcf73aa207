// task.hpp — value types for benchmark tasks: train/test grid pairs, the
// hidden rule, and provenance metadata (seed, generator version, variant).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "araoc/grid.hpp"
#include "araoc/ops.hpp"

namespace araoc {

inline constexpr std::string_view generator_version = "1.0.0";

struct GridPair {
  Grid input;
  Grid output;
  friend bool operator==(const GridPair&, const GridPair&) = default;
};

struct TaskMeta {
  std::uint64_t seed = 0;            // per-task stream seed
  std::string generator_version;     // version that produced the task
  std::string variant;               // "standard", "controlled", "small", ...
  std::optional<std::string> pair_id;      // shared by mirror left/right duos
  std::optional<std::string> combination;  // controlled (direction, steps) tag
  friend bool operator==(const TaskMeta&, const TaskMeta&) = default;
};

struct Task {
  std::string id;
  std::string family;           // "move", "copy", ..., "compose"
  std::optional<OpSpec> rule;   // absent for externally loaded tasks
  std::vector<GridPair> train;  // generated tasks always carry three
  GridPair test;
  TaskMeta meta;
  friend bool operator==(const Task&, const Task&) = default;
};

struct Benchmark {
  std::uint64_t master_seed = 0;
  std::string generator_version;
  std::vector<Task> tasks;
  friend bool operator==(const Benchmark&, const Benchmark&) = default;
};

// Canonical string of all train/test grids; two tasks with equal keys show a
// solver identical content regardless of ids. Used for dedup and for keeping
// fine-tune corpora disjoint from a benchmark.
inline std::string task_content_key(const Task& task) {
  std::string key;
  auto append_grid = [&key](const Grid& g) {
    key += std::to_string(g.rows()) + 'x' + std::to_string(g.cols()) + ':';
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        key += static_cast<char>('0' + g.at(r, c).code());
    key += ';';
  };
  for (const GridPair& pair : task.train) {
    append_grid(pair.input);
    append_grid(pair.output);
  }
  key += '|';
  append_grid(task.test.input);
  append_grid(task.test.output);
  return key;
}

}  // namespace araoc
