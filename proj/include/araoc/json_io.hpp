// json_io.hpp — JSON encoding for grids, op specs, tasks, benchmark files and
// result records. Encoding uses insertion-ordered objects so emitted files are
// byte-stable; decoding is strict (op specs reject unknown fields) and every
// failure throws DataError with enough context to locate the bad input.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "araoc/task.hpp"

namespace araoc {

using json = nlohmann::ordered_json;

// Malformed or inconsistent input data (files, JSON payloads, id references).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------- grids

inline json to_json(const Grid& g) {
  json rows = json::array();
  for (int r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < g.cols(); ++c) row.push_back(g.at(r, c).code());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Grid grid_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw DataError(where + ": grid must be a non-empty array of rows");
  std::vector<std::vector<int>> rows;
  rows.reserve(j.size());
  for (const json& row : j) {
    if (!row.is_array())
      throw DataError(where + ": grid row must be an array");
    std::vector<int> cells;
    cells.reserve(row.size());
    for (const json& cell : row) {
      if (!cell.is_number_integer())
        throw DataError(where + ": grid cell must be an integer");
      cells.push_back(cell.get<int>());
    }
    rows.push_back(std::move(cells));
  }
  try {
    return Grid::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw DataError(where + ": " + e.what());
  }
}

// ---------------------------------------------------------------- op specs

inline json to_json(const OpSpec& spec);

namespace detail {

struct OpSpecEncoder {
  json operator()(const MoveOp& op) const {
    return {{"op", "move"},
            {"direction", to_string(op.direction)},
            {"steps", op.steps}};
  }
  json operator()(const ChangeColorOp& op) const {
    return {{"op", "change_color"}, {"target", op.target.code()}};
  }
  json operator()(const CopyOp& op) const {
    return {{"op", "copy"},
            {"direction", to_string(op.direction)},
            {"steps", op.steps}};
  }
  json operator()(const MirrorOp& op) const {
    return {{"op", "mirror"}, {"direction", to_string(op.direction)}};
  }
  json operator()(const FillInternalOp& op) const {
    return {{"op", "fill_internal"}, {"fill", op.fill.code()}};
  }
  json operator()(const ScaleOp&) const { return {{"op", "scale"}}; }
  json operator()(const ComposeOp& op) const {
    json steps = json::array();
    for (const OpSpec& step : op.steps) steps.push_back(to_json(step));
    return {{"op", "compose"}, {"steps", std::move(steps)}};
  }
};

inline void require_fields(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (item.key() == name) {
        known = true;
        break;
      }
    if (!known)
      throw DataError(where + ": unknown field \"" + item.key() + "\"");
  }
  for (const char* name : allowed)
    if (!j.contains(name))
      throw DataError(where + ": missing field \"" + std::string(name) + "\"");
}

inline Color color_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw DataError(where + ": color must be an integer");
  try {
    return Color(j.get<int>());
  } catch (const std::invalid_argument& e) {
    throw DataError(where + ": " + e.what());
  }
}

inline int steps_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<int>() < 1)
    throw DataError(where + ": steps must be an integer >= 1");
  return j.get<int>();
}

}  // namespace detail

inline json to_json(const OpSpec& spec) {
  return std::visit(detail::OpSpecEncoder{}, spec.op);
}

inline OpSpec opspec_from_json(const json& j, const std::string& where,
                               bool allow_compose = true) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw DataError(where + ": op spec must be an object with an \"op\" tag");
  const std::string op = j["op"].get<std::string>();
  if (op == "move" || op == "copy") {
    detail::require_fields(j, {"op", "direction", "steps"}, where);
    if (!j["direction"].is_string())
      throw DataError(where + ": direction must be a string");
    auto dir = direction8_from_string(j["direction"].get<std::string>());
    if (!dir)
      throw DataError(where + ": unknown direction \"" +
                      j["direction"].get<std::string>() + "\"");
    int steps = detail::steps_from_json(j["steps"], where);
    if (op == "move") return OpSpec{MoveOp{*dir, steps}};
    return OpSpec{CopyOp{*dir, steps}};
  }
  if (op == "change_color") {
    detail::require_fields(j, {"op", "target"}, where);
    Color target = detail::color_from_json(j["target"], where);
    if (target.is_black())
      throw DataError(where + ": change_color target must be non-black");
    return OpSpec{ChangeColorOp{target}};
  }
  if (op == "mirror") {
    detail::require_fields(j, {"op", "direction"}, where);
    if (!j["direction"].is_string())
      throw DataError(where + ": direction must be a string");
    auto dir = direction4_from_string(j["direction"].get<std::string>());
    if (!dir)
      throw DataError(where + ": unknown mirror direction \"" +
                      j["direction"].get<std::string>() + "\"");
    return OpSpec{MirrorOp{*dir}};
  }
  if (op == "fill_internal") {
    detail::require_fields(j, {"op", "fill"}, where);
    Color fill = detail::color_from_json(j["fill"], where);
    if (fill.is_black())
      throw DataError(where + ": fill_internal fill must be non-black");
    return OpSpec{FillInternalOp{fill}};
  }
  if (op == "scale") {
    detail::require_fields(j, {"op"}, where);
    return OpSpec{ScaleOp{}};
  }
  if (op == "compose") {
    if (!allow_compose)
      throw DataError(where + ": compositions cannot nest");
    detail::require_fields(j, {"op", "steps"}, where);
    if (!j["steps"].is_array() || j["steps"].empty())
      throw DataError(where + ": compose steps must be a non-empty array");
    ComposeOp compose;
    int i = 0;
    for (const json& step : j["steps"])
      compose.steps.push_back(opspec_from_json(
          step, where + ".steps[" + std::to_string(i++) + "]",
          /*allow_compose=*/false));
    return OpSpec{std::move(compose)};
  }
  throw DataError(where + ": unknown op \"" + op + "\"");
}

// ------------------------------------------------------------------- tasks

inline json to_json(const GridPair& pair) {
  return {{"input", to_json(pair.input)}, {"output", to_json(pair.output)}};
}

inline json to_json(const Task& task) {
  json meta = {{"seed", task.meta.seed},
               {"generator_version", task.meta.generator_version},
               {"variant", task.meta.variant}};
  if (task.meta.pair_id) meta["pair_id"] = *task.meta.pair_id;
  if (task.meta.combination) meta["combination"] = *task.meta.combination;
  json train = json::array();
  for (const GridPair& pair : task.train) train.push_back(to_json(pair));
  return {{"id", task.id},
          {"family", task.family},
          {"rule", task.rule ? to_json(*task.rule) : json(nullptr)},
          {"train", std::move(train)},
          {"test", json::array({to_json(task.test)})},
          {"meta", std::move(meta)}};
}

inline GridPair pair_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("input") || !j.contains("output"))
    throw DataError(where + ": pair must be an object with input and output");
  return GridPair{grid_from_json(j["input"], where + ".input"),
                  grid_from_json(j["output"], where + ".output")};
}

inline Task task_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw DataError(where + ": task must be an object");
  for (const char* field : {"id", "family", "rule", "train", "test", "meta"})
    if (!j.contains(field))
      throw DataError(where + ": missing field \"" + std::string(field) + "\"");
  if (!j["id"].is_string() || !j["family"].is_string())
    throw DataError(where + ": id and family must be strings");
  const std::string id = j["id"].get<std::string>();

  std::optional<OpSpec> rule;
  if (!j["rule"].is_null()) rule = opspec_from_json(j["rule"], where + ".rule");

  if (!j["train"].is_array())
    throw DataError(where + ": train must be an array");
  std::vector<GridPair> train;
  int i = 0;
  for (const json& pair : j["train"])
    train.push_back(pair_from_json(pair, where + ".train[" + std::to_string(i++) + "]"));

  if (!j["test"].is_array() || j["test"].size() != 1)
    throw DataError(where + ": test must be an array with exactly one pair");
  GridPair test = pair_from_json(j["test"][0], where + ".test[0]");

  const json& m = j["meta"];
  if (!m.is_object() || !m.contains("seed") || !m.contains("generator_version") ||
      !m.contains("variant"))
    throw DataError(where + ": meta must carry seed, generator_version, variant");
  TaskMeta meta;
  meta.seed = m["seed"].get<std::uint64_t>();
  meta.generator_version = m["generator_version"].get<std::string>();
  meta.variant = m["variant"].get<std::string>();
  if (m.contains("pair_id")) meta.pair_id = m["pair_id"].get<std::string>();
  if (m.contains("combination"))
    meta.combination = m["combination"].get<std::string>();

  return Task{id,
              j["family"].get<std::string>(),
              std::move(rule),
              std::move(train),
              std::move(test),
              std::move(meta)};
}

// --------------------------------------------------------------- benchmarks

inline json to_json(const Benchmark& bench) {
  json tasks = json::array();
  for (const Task& task : bench.tasks) tasks.push_back(to_json(task));
  return {{"master_seed", bench.master_seed},
          {"generator_version", bench.generator_version},
          {"tasks", std::move(tasks)}};
}

inline Benchmark benchmark_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("tasks") || !j["tasks"].is_array())
    throw DataError(where + ": benchmark must be an object with a tasks array");
  Benchmark bench;
  bench.master_seed = j.value("master_seed", std::uint64_t{0});
  bench.generator_version = j.value("generator_version", std::string{});
  int i = 0;
  for (const json& task : j["tasks"])
    bench.tasks.push_back(
        task_from_json(task, where + ".tasks[" + std::to_string(i++) + "]"));
  return bench;
}

// ------------------------------------------------------------ file plumbing

inline json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

inline void write_benchmark(const std::filesystem::path& path,
                            const Benchmark& bench) {
  write_text_file(path, to_json(bench).dump() + "\n");
}

inline Benchmark read_benchmark(const std::filesystem::path& path) {
  return benchmark_from_json(parse_json_file(path), path.string());
}

// Loads a task file in either shape: a benchmark object or a bare task array.
inline std::vector<Task> read_tasks(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  if (j.is_array()) {
    std::vector<Task> tasks;
    int i = 0;
    for (const json& task : j)
      tasks.push_back(task_from_json(
          task, path.string() + "[" + std::to_string(i++) + "]"));
    return tasks;
  }
  return benchmark_from_json(j, path.string()).tasks;
}

// ------------------------------------------------------------ result records

// One scored prediction; serialized as a single JSON line.
struct PredictionRecord {
  std::string task_id;
  std::string raw_response;
  std::optional<Grid> parsed;
  std::optional<std::string> failure_reason;
  bool exact = false;
  bool shape_match = false;
};

inline json to_json(const PredictionRecord& rec) {
  return {{"task_id", rec.task_id},
          {"raw_response", rec.raw_response},
          {"parsed", rec.parsed ? to_json(*rec.parsed) : json(nullptr)},
          {"failure_reason",
           rec.failure_reason ? json(*rec.failure_reason) : json(nullptr)},
          {"exact", rec.exact},
          {"shape_match", rec.shape_match}};
}

// One raw model (or oracle) response before scoring.
struct ResponseRecord {
  std::string task_id;
  std::string raw_response;
  std::optional<std::string> error;    // transport failure after retries
  std::optional<std::string> skipped;  // e.g. "no_rule" from the oracle solver
};

inline json to_json(const ResponseRecord& rec) {
  json j = {{"task_id", rec.task_id}, {"raw_response", rec.raw_response}};
  if (rec.error) j["error"] = *rec.error;
  if (rec.skipped) j["skipped"] = *rec.skipped;
  return j;
}

inline ResponseRecord response_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("task_id") || !j["task_id"].is_string())
    throw DataError(where + ": response line needs a task_id string");
  ResponseRecord rec;
  rec.task_id = j["task_id"].get<std::string>();
  rec.raw_response = j.value("raw_response", std::string{});
  if (j.contains("error")) rec.error = j["error"].get<std::string>();
  if (j.contains("skipped")) rec.skipped = j["skipped"].get<std::string>();
  return rec;
}

// Reads a JSON Lines file, skipping blank lines.
inline std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<json> lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return lines;
}

}  // namespace araoc
