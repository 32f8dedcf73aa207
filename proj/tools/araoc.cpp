// araoc — command-line harness: generate task suites, render prompts, query
// chat-completion endpoints, solve with the oracle, score responses, and run
// the paired mirror analysis.
//
// Exit codes: 0 success, 1 usage error, 2 data/generation error,
//             3 network or authentication error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"

#include "araoc/client.hpp"
#include "araoc/eval.hpp"
#include "araoc/gen.hpp"
#include "araoc/json_io.hpp"
#include "araoc/render.hpp"
#include "araoc/svg.hpp"

namespace fs = std::filesystem;
using namespace araoc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_network = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family parse_family(const std::string& name) {
  if (auto f = family_from_string(name)) return *f;
  throw UsageError("unknown family '" + name +
                   "' (expected move, change_color, copy, mirror, "
                   "fill_internal, or scale)");
}

PromptStyle parse_style(const std::string& name) {
  if (auto s = prompt_style_from_string(name)) return *s;
  throw UsageError("unknown prompt style '" + name +
                   "' (expected matrix_standard, natural_language, "
                   "no_location, or matrix_property)");
}

void write_tasks_file(const fs::path& path, std::uint64_t seed,
                      std::vector<Task> tasks) {
  Benchmark bench{seed, std::string(generator_version), std::move(tasks)};
  write_benchmark(path, bench);
}

// Latest usable response per id from a query/solve JSONL: a successful
// record wins over an earlier error for the same id (resumed runs retry
// errored tasks), otherwise the last record stands.
struct LoadedResponse {
  std::string raw;
  bool errored = false;
};

std::map<std::string, LoadedResponse> load_responses(const fs::path& path) {
  std::map<std::string, LoadedResponse> chosen;
  for (const json& line : read_jsonl(path)) {
    if (line.is_object() && line.value("ledger", false)) continue;
    if (!line.is_object() || !line.contains("task_id"))
      throw DataError(path.string() + ": response line lacks task_id");
    const std::string id = line.at("task_id").get<std::string>();
    LoadedResponse response;
    response.raw = line.value("raw_response", std::string{});
    response.errored = (line.contains("error") && !line["error"].is_null()) ||
                       (line.contains("skipped") && !line["skipped"].is_null());
    auto it = chosen.find(id);
    if (it == chosen.end() || !response.errored || it->second.errored)
      chosen[id] = std::move(response);
  }
  return chosen;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::string suite, variant, family, out, prompts_out, exclude, style =
      "matrix_standard";
  std::uint64_t seed = 42;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  int count = 100;
  int per_family = 100;
  std::vector<std::string> counts;
};

int run_gen(const GenArgs& args) {
  if (args.suite.empty() == args.variant.empty())
    throw UsageError("gen needs exactly one of --suite or --variant");
  const int workers = std::max(1, args.workers);

  if (!args.suite.empty()) {
    if (args.suite != "araoc")
      throw UsageError("unknown suite '" + args.suite + "' (expected araoc)");
    Benchmark bench = gen_benchmark(args.seed, args.per_family, workers);
    const fs::path out = args.out.empty() ? "araoc.json" : args.out;
    write_benchmark(out, bench);
    std::cout << "wrote " << bench.tasks.size() << " tasks (seed " << args.seed
              << ") to " << out.string() << "\n";
    return exit_ok;
  }

  if (args.variant == "controlled") {
    if (args.family.empty())
      throw UsageError("gen --variant controlled needs --family move|copy");
    const Family family = parse_family(args.family);
    std::vector<Task> tasks = gen_controlled(family, args.seed, workers);
    const fs::path out =
        args.out.empty() ? "controlled-" + args.family + ".json" : args.out;
    const std::size_t n = tasks.size();
    write_tasks_file(out, args.seed, std::move(tasks));
    std::cout << "wrote " << n << " controlled " << args.family
              << " tasks (50 base grids x 6 combinations, seed " << args.seed
              << ") to " << out.string() << "\n";
    return exit_ok;
  }
  if (args.variant == "small") {
    if (args.family.empty())
      throw UsageError("gen --variant small needs --family");
    const Family family = parse_family(args.family);
    std::vector<Task> tasks = gen_small(family, args.seed, args.count, workers);
    const fs::path out =
        args.out.empty() ? "small-" + args.family + ".json" : args.out;
    const std::size_t n = tasks.size();
    write_tasks_file(out, args.seed, std::move(tasks));
    std::cout << "wrote " << n << " small " << args.family << " tasks (seed "
              << args.seed << ") to " << out.string() << "\n";
    return exit_ok;
  }
  if (args.variant == "mirror-lr") {
    std::vector<Task> tasks = gen_mirror_pairs(args.seed, args.count, workers);
    const fs::path out = args.out.empty() ? "mirror-lr.json" : args.out;
    const std::size_t n = tasks.size();
    write_tasks_file(out, args.seed, std::move(tasks));
    std::cout << "wrote " << n << " mirror tasks in " << n / 2
              << " left/right pairs (seed " << args.seed << ") to "
              << out.string() << "\n";
    return exit_ok;
  }
  if (args.variant == "composition") {
    std::vector<Task> tasks = gen_composition(args.seed, args.count, workers);
    const fs::path out = args.out.empty() ? "composition.json" : args.out;
    const std::size_t n = tasks.size();
    write_tasks_file(out, args.seed, std::move(tasks));
    std::cout << "wrote " << n << " two-step composition tasks (seed "
              << args.seed << ") to " << out.string() << "\n";
    return exit_ok;
  }
  if (args.variant == "finetune") {
    std::vector<std::pair<Family, int>> counts;
    if (args.counts.empty()) {
      counts = {{Family::move, 1500}, {Family::copy, 1500}};
    } else {
      for (const std::string& entry : args.counts) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
          throw UsageError("--counts entries look like move=1500");
        counts.emplace_back(parse_family(entry.substr(0, eq)),
                            std::stoi(entry.substr(eq + 1)));
      }
    }
    std::vector<Task> exclude;
    if (!args.exclude.empty()) exclude = read_tasks(args.exclude);
    std::vector<Task> corpus =
        gen_finetune_corpus(counts, exclude, args.seed, workers);
    const fs::path out = args.out.empty() ? "finetune.json" : args.out;
    write_tasks_file(out, args.seed, corpus);
    std::cout << "wrote " << corpus.size() << " fine-tune tasks (seed "
              << args.seed << ") to " << out.string() << "\n";
    if (!args.prompts_out.empty()) {
      const PromptStyle style = parse_style(args.style);
      std::ofstream pf(args.prompts_out);
      if (!pf) throw DataError("cannot open " + args.prompts_out);
      for (const Task& task : corpus) {
        const RenderedPrompt prompt = build_prompt(task, style);
        json line;
        line["task_id"] = task.id;
        line["system"] = prompt.system;
        line["prompt"] = prompt.user;
        line["completion"] = render_matrix_text(task.test.output);
        pf << line.dump() << "\n";
      }
      std::cout << "wrote " << corpus.size() << " prompt/completion lines to "
                << args.prompts_out << "\n";
    }
    return exit_ok;
  }
  throw UsageError("unknown variant '" + args.variant +
                   "' (expected controlled, small, mirror-lr, composition, "
                   "or finetune)");
}

// ----------------------------------------------------------------- solve

int run_solve(const std::string& tasks_path, const std::string& out_path) {
  const std::vector<Task> tasks = read_tasks(tasks_path);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot open " + out_path);
  int solved = 0, skipped = 0;
  for (const Task& task : tasks) {
    PredictionRecord record;
    record.task_id = task.id;
    if (!task.rule) {
      record.failure_reason = "SkippedNoRule";
      ++skipped;
    } else {
      record.raw_response = render_matrix_text(apply(task.test.input, *task.rule));
      const ParseOutcome parsed = parse_grid_response(record.raw_response);
      const TaskScore score = score_task(parsed, task.test.output, task.id);
      record.parsed = parsed.grid;
      if (parsed.failure) record.failure_reason = std::string(to_string(*parsed.failure));
      record.exact = score.exact;
      record.shape_match = score.shape_match;
      ++solved;
    }
    out << to_json(record).dump() << "\n";
  }
  std::cout << "solved " << solved << " tasks";
  if (skipped > 0) std::cout << " (" << skipped << " skipped without rules)";
  std::cout << " -> " << out_path << "\n";
  return exit_ok;
}

// ----------------------------------------------------------------- query

struct QueryArgs {
  std::string tasks, prompts, endpoint, model, out;
  std::string style = "matrix_standard";
  std::string key_env = "ARAOC_API_KEY";
  double temperature = 0.0;
  bool has_temperature = false;
  int max_tokens = 3000;
  int timeout = 120;
  int retries = 3;
  double backoff = 1.0;
  int concurrency = 4;
};

int run_query(const QueryArgs& args) {
  if (args.tasks.empty() == args.prompts.empty())
    throw UsageError("query needs exactly one of --tasks or --prompts");
  RunConfig config;
  config.endpoint = args.endpoint;
  config.model = args.model;
  config.style = parse_style(args.style);
  if (args.has_temperature) config.temperature = args.temperature;
  config.max_tokens = args.max_tokens;
  config.timeout_seconds = args.timeout;
  config.max_retries = args.retries;
  config.backoff_seconds = args.backoff;
  config.concurrency = args.concurrency;
  config.api_key_env = args.key_env;

  QueryStats stats;
  if (!args.tasks.empty()) {
    stats = run_queries(config, read_tasks(args.tasks), args.out, &std::cout);
  } else {
    std::vector<PromptJob> jobs;
    for (const json& line : read_jsonl(args.prompts)) {
      if (!line.is_object() || !line.contains("id") || !line.contains("user"))
        throw DataError(args.prompts + ": prompt lines need id and user fields");
      jobs.push_back(PromptJob{
          line.at("id").get<std::string>(),
          RenderedPrompt{line.value("system", std::string(system_prompt)),
                         line.at("user").get<std::string>(), config.style,
                         line.at("id").get<std::string>()}});
    }
    stats = run_prompt_queries(config, jobs, args.out, &std::cout);
  }
  std::cout << "total " << stats.total << ": " << stats.responded
            << " responded, " << stats.failed << " failed, " << stats.skipped
            << " already answered -> " << args.out << "\n";
  return exit_ok;
}

// ------------------------------------------------------------------ eval

void print_stats_row(const std::string& label, const GroupStats& g) {
  std::printf("%-28s %6d %9s %9s %10d\n", label.c_str(), g.n,
              format_percent(g.acc_percent()).c_str(),
              format_percent(g.not_match_percent()).c_str(), g.parse_failures);
}

json stats_json(const GroupStats& g) {
  json j;
  j["n"] = g.n;
  j["acc_percent"] = g.acc_percent();
  j["not_match_percent"] = g.not_match_percent();
  j["parse_failures"] = g.parse_failures;
  return j;
}

int run_eval(const std::string& tasks_path, const std::string& responses_path,
             const std::string& out_path, const std::string& summary_path) {
  const std::vector<Task> tasks = read_tasks(tasks_path);
  std::map<std::string, const Task*> by_id;
  for (const Task& task : tasks) by_id[task.id] = &task;

  const auto responses = load_responses(responses_path);
  for (const auto& [id, response] : responses)
    if (!by_id.count(id))
      throw DataError("UnknownTaskId: response for '" + id +
                      "' has no matching task in " + tasks_path);
  if (responses.empty())
    throw EmptyInputError(responses_path + " holds no responses");

  std::ofstream out;
  if (!out_path.empty()) {
    out.open(out_path);
    if (!out) throw DataError("cannot open " + out_path);
  }

  std::vector<TaskScore> scores;
  for (const Task& task : tasks) {
    auto it = responses.find(task.id);
    if (it == responses.end()) continue;
    const ParseOutcome parsed = parse_grid_response(it->second.raw);
    TaskScore score = score_task(parsed, task.test.output, task.id, task.family,
                                 task.meta.variant);
    if (out.is_open()) {
      PredictionRecord record{task.id, it->second.raw, parsed.grid,
                              parsed.failure
                                  ? std::optional<std::string>(std::string(
                                        to_string(*parsed.failure)))
                                  : std::nullopt,
                              score.exact, score.shape_match};
      out << to_json(record).dump() << "\n";
    }
    scores.push_back(std::move(score));
  }

  const EvalSummary summary = aggregate(scores);
  std::printf("%-28s %6s %9s %9s %10s\n", "group", "n", "Acc", "Not M%",
              "ParseFail");
  print_stats_row("overall", summary.overall);
  for (const auto& [family, stats] : summary.per_family)
    print_stats_row("family " + family, stats);
  for (const auto& [variant, stats] : summary.per_variant)
    print_stats_row("variant " + variant, stats);

  if (!summary_path.empty()) {
    json j;
    j["overall"] = stats_json(summary.overall);
    j["per_family"] = json::object();
    for (const auto& [family, stats] : summary.per_family)
      j["per_family"][family] = stats_json(stats);
    j["per_variant"] = json::object();
    for (const auto& [variant, stats] : summary.per_variant)
      j["per_variant"][variant] = stats_json(stats);
    write_text_file(summary_path, j.dump(2) + "\n");
    std::cout << "summary -> " << summary_path << "\n";
  }
  if (!out_path.empty()) std::cout << "results -> " << out_path << "\n";
  return exit_ok;
}

// -------------------------------------------------------------- analyze-mirror

// Pair key for a mirror task id: "mirror-lr-0007-left" -> "mirror-lr-0007".
std::string pair_key(const std::string& id) {
  for (std::string_view suffix : {"-left", "-right"})
    if (id.size() > suffix.size() &&
        id.compare(id.size() - suffix.size(), suffix.size(), suffix) == 0)
      return id.substr(0, id.size() - suffix.size());
  return id;
}

std::map<std::string, bool> load_exact_by_pair(const fs::path& path) {
  std::map<std::string, bool> exact;
  for (const json& line : read_jsonl(path)) {
    if (line.is_object() && line.value("ledger", false)) continue;
    if (!line.is_object() || !line.contains("task_id") ||
        !line.contains("exact"))
      throw DataError(path.string() +
                      ": expected scored result lines with task_id and exact");
    exact[pair_key(line.at("task_id").get<std::string>())] =
        line.at("exact").get<bool>();
  }
  return exact;
}

int run_analyze_mirror(const std::string& left_path,
                       const std::string& right_path) {
  const auto left = load_exact_by_pair(left_path);
  const auto right = load_exact_by_pair(right_path);
  if (left.empty() || right.empty())
    throw EmptyInputError("mirror analysis needs non-empty result files");
  for (const auto& [key, _] : left)
    if (!right.count(key))
      throw DataError("UnpairedResults: '" + key + "' missing from " +
                      right_path);
  for (const auto& [key, _] : right)
    if (!left.count(key))
      throw DataError("UnpairedResults: '" + key + "' missing from " +
                      left_path);

  std::vector<PairedOutcome> pairs;
  int left_exact = 0, right_exact = 0;
  for (const auto& [key, l] : left) {
    const bool r = right.at(key);
    pairs.push_back(PairedOutcome{key, l, r});
    if (l) ++left_exact;
    if (r) ++right_exact;
  }
  const McNemarResult test = mcnemar_exact(pairs);
  const double acc_left = 100.0 * left_exact / static_cast<double>(pairs.size());
  const double acc_right =
      100.0 * right_exact / static_cast<double>(pairs.size());
  const bool significant = test.p_two_sided < 0.05;
  std::cout << "pairs " << pairs.size() << ", discordant b=" << test.b
            << " c=" << test.c << "\n";
  std::cout << "Acc left  = " << format_percent(acc_left)
            << (significant && acc_left > acc_right ? " **" : "") << "\n";
  std::cout << "Acc right = " << format_percent(acc_right)
            << (significant && acc_right > acc_left ? " **" : "") << "\n";
  std::printf("two-sided p = %.6f\none-sided p = %.6f\n", test.p_two_sided,
              test.p_one_sided);
  if (significant)
    std::cout << "** difference significant at p < 0.05 (exact paired sign "
                 "test)\n";
  return exit_ok;
}

// -------------------------------------------------------------- render-svg

int run_render_svg(const std::string& tasks_path, const std::string& out_dir) {
  const std::vector<Task> tasks = read_tasks(tasks_path);
  fs::create_directories(out_dir);
  for (const Task& task : tasks)
    write_text_file(fs::path(out_dir) / (task.id + ".svg"), svg_for_task(task));
  std::cout << "wrote " << tasks.size() << " SVG files to " << out_dir << "\n";
  return exit_ok;
}

// ------------------------------------------------------------- matrix-props

int run_props_generate(const std::string& tasks_path,
                       const std::string& out_path) {
  const std::vector<Task> tasks = read_tasks(tasks_path);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot open " + out_path);
  int written = 0, skipped = 0;
  for (const Task& task : tasks) {
    const Grid& grid = task.test.input;
    if (!bounding_box_nonblack(grid)) {
      ++skipped;
      continue;
    }
    auto [prompt, oracle] = build_matrix_property_prompt(grid, task.id);
    json line;
    line["id"] = task.id;
    line["system"] = prompt.system;
    line["user"] = prompt.user;
    json oj;
    oj["size"] = json::array({oracle.rows, oracle.cols});
    oj["size_answer"] = oracle.size_answer();
    json corners = json::array();
    for (const Cell& cell : oracle.corners)
      corners.push_back(json::array({cell.row + 1, cell.col + 1}));
    oj["location_1based"] = corners;
    oj["location_answer"] = oracle.location_answer();
    oj["transpose"] = oracle.transpose_answer();
    oj["rank"] = oracle.rank;
    line["oracle"] = oj;
    out << line.dump() << "\n";
    ++written;
  }
  std::cout << "wrote " << written << " question sets to " << out_path;
  if (skipped > 0) std::cout << " (" << skipped << " all-black grids skipped)";
  std::cout << "\n";
  return exit_ok;
}

int run_props_score(const std::string& questions_path,
                    const std::string& responses_path,
                    const std::string& out_path) {
  std::map<std::string, MatrixPropertyOracle> oracles;
  std::vector<std::string> order;
  for (const json& line : read_jsonl(questions_path)) {
    if (!line.is_object() || !line.contains("id") || !line.contains("oracle"))
      throw DataError(questions_path + ": expected question lines with oracle");
    const json& oj = line.at("oracle");
    MatrixPropertyOracle oracle;
    oracle.rows = oj.at("size").at(0).get<int>();
    oracle.cols = oj.at("size").at(1).get<int>();
    for (std::size_t i = 0; i < 4; ++i)
      oracle.corners[i] = Cell{oj.at("location_1based").at(i).at(0).get<int>() - 1,
                               oj.at("location_1based").at(i).at(1).get<int>() - 1};
    const ParseOutcome t = parse_grid_response(oj.at("transpose").get<std::string>());
    if (!t.ok())
      throw DataError(questions_path + ": unreadable transpose oracle for " +
                      line.at("id").get<std::string>());
    oracle.transposed = *t.grid;
    oracle.rank = oj.at("rank").get<int>();
    const std::string id = line.at("id").get<std::string>();
    oracles.emplace(id, std::move(oracle));
    order.push_back(id);
  }

  const auto responses = load_responses(responses_path);
  std::ofstream out;
  if (!out_path.empty()) {
    out.open(out_path);
    if (!out) throw DataError("cannot open " + out_path);
  }

  int n = 0, size_ok = 0, location_ok = 0, transpose_ok = 0, rank_ok = 0;
  for (const std::string& id : order) {
    auto it = responses.find(id);
    if (it == responses.end()) continue;
    const MatrixPropertyScore score =
        score_matrix_properties(it->second.raw, oracles.at(id));
    ++n;
    size_ok += score.size;
    location_ok += score.location;
    transpose_ok += score.transpose;
    rank_ok += score.rank;
    if (out.is_open()) {
      json line;
      line["id"] = id;
      line["size"] = score.size;
      line["location"] = score.location;
      line["transpose"] = score.transpose;
      line["rank"] = score.rank;
      out << line.dump() << "\n";
    }
  }
  if (n == 0) throw EmptyInputError("no responses matched the question ids");
  auto pct = [&](int k) {
    return format_percent(100.0 * k / static_cast<double>(n));
  };
  std::printf("%-10s %6d\n", "n", n);
  std::printf("%-10s %6s\n", "Size", pct(size_ok).c_str());
  std::printf("%-10s %6s\n", "Location", pct(location_ok).c_str());
  std::printf("%-10s %6s\n", "Transpose", pct(transpose_ok).c_str());
  std::printf("%-10s %6s\n", "Rank", pct(rank_ok).c_str());
  if (!out_path.empty()) std::cout << "results -> " << out_path << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "araoc: grid-transformation benchmark generator, oracle, and "
      "evaluation harness"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate task suites");
  gen->add_option("--suite", gen_args.suite, "Named suite: araoc");
  gen->add_option("--variant", gen_args.variant,
                  "controlled | small | mirror-lr | composition | finetune");
  gen->add_option("--family", gen_args.family, "Task family for the variant");
  gen->add_option("--seed", gen_args.seed, "Master seed (default 42)");
  gen->add_option("--workers", gen_args.workers,
                  "Generator threads (output is identical for any value)");
  gen->add_option("--count", gen_args.count,
                  "Task/pair count for small, mirror-lr, composition");
  gen->add_option("--per-family", gen_args.per_family,
                  "Tasks per family for --suite araoc (default 100)");
  gen->add_option("--out", gen_args.out, "Output JSON path");
  gen->add_option("--counts", gen_args.counts,
                  "finetune: family=N pairs, e.g. move=1500,copy=1500")
      ->delimiter(',');
  gen->add_option("--exclude", gen_args.exclude,
                  "finetune: benchmark whose task content must not reappear");
  gen->add_option("--prompts-out", gen_args.prompts_out,
                  "finetune: also write prompt/completion JSONL here");
  gen->add_option("--style", gen_args.style,
                  "Prompt style for --prompts-out (default matrix_standard)");

  std::string solve_tasks, solve_out = "predictions.jsonl";
  CLI::App* solve =
      app.add_subcommand("solve", "Apply each task's rule (oracle predictor)");
  solve->add_option("--tasks", solve_tasks, "Task file")->required();
  solve->add_option("--out", solve_out, "Predictions JSONL path");

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand(
      "query", "Send prompts to an OpenAI-compatible chat endpoint");
  query->add_option("--tasks", query_args.tasks, "Task file to render");
  query->add_option("--prompts", query_args.prompts,
                    "Pre-rendered prompt JSONL (id/system/user)");
  query->add_option("--endpoint", query_args.endpoint,
                    "Base URL, e.g. https://api.openai.com/v1")
      ->required();
  query->add_option("--model", query_args.model, "Model name")->required();
  query->add_option("--style", query_args.style,
                    "matrix_standard | natural_language | no_location");
  CLI::Option* temp_opt = query->add_option("--temperature",
                                            query_args.temperature,
                                            "Sampling temperature (default: "
                                            "provider default)");
  query->add_option("--max-tokens", query_args.max_tokens,
                    "Max output tokens (default 3000)");
  query->add_option("--timeout", query_args.timeout,
                    "Per-request timeout seconds");
  query->add_option("--retries", query_args.retries,
                    "Retries per request on transient failures");
  query->add_option("--backoff", query_args.backoff,
                    "Initial retry backoff seconds (doubles per retry)");
  query->add_option("--concurrency", query_args.concurrency,
                    "Max in-flight requests");
  query->add_option("--key-env", query_args.key_env,
                    "Environment variable holding the API key");
  query->add_option("--out", query_args.out, "Responses JSONL path")
      ->required();

  std::string eval_tasks, eval_responses, eval_out = "results.jsonl",
                                          eval_summary = "summary.json";
  CLI::App* eval = app.add_subcommand("eval", "Score responses against tasks");
  eval->add_option("--tasks", eval_tasks, "Task file")->required();
  eval->add_option("--responses", eval_responses, "Responses JSONL")
      ->required();
  eval->add_option("--out", eval_out, "Scored results JSONL path");
  eval->add_option("--summary", eval_summary, "Summary JSON path");

  std::string mirror_left, mirror_right;
  CLI::App* mirror = app.add_subcommand(
      "analyze-mirror", "Paired left/right significance analysis");
  mirror->add_option("--left", mirror_left, "Scored results JSONL (left)")
      ->required();
  mirror->add_option("--right", mirror_right, "Scored results JSONL (right)")
      ->required();

  std::string svg_tasks, svg_dir;
  CLI::App* svg = app.add_subcommand("render-svg", "Render tasks as SVG files");
  svg->add_option("--tasks", svg_tasks, "Task file")->required();
  svg->add_option("--out-dir", svg_dir, "Output directory")->required();

  CLI::App* props = app.add_subcommand(
      "matrix-props", "Matrix-property question sets (generate/score)");
  props->require_subcommand(1);
  std::string props_tasks, props_out = "matrix-props.jsonl";
  CLI::App* props_gen = props->add_subcommand(
      "generate", "Build question sets from task test inputs");
  props_gen->add_option("--tasks", props_tasks, "Task file")->required();
  props_gen->add_option("--out", props_out, "Questions JSONL path");
  std::string score_questions, score_responses, score_out;
  CLI::App* props_score =
      props->add_subcommand("score", "Grade responses to question sets");
  props_score->add_option("--questions", score_questions, "Questions JSONL")
      ->required();
  props_score->add_option("--responses", score_responses, "Responses JSONL")
      ->required();
  props_score->add_option("--out", score_out, "Per-question results JSONL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_tasks, solve_out);
    if (query->parsed()) {
      query_args.has_temperature = temp_opt->count() > 0;
      return run_query(query_args);
    }
    if (eval->parsed())
      return run_eval(eval_tasks, eval_responses, eval_out, eval_summary);
    if (mirror->parsed()) return run_analyze_mirror(mirror_left, mirror_right);
    if (svg->parsed()) return run_render_svg(svg_tasks, svg_dir);
    if (props->parsed()) {
      if (props_gen->parsed()) return run_props_generate(props_tasks, props_out);
      if (props_score->parsed())
        return run_props_score(score_questions, score_responses, score_out);
    }
    std::cerr << "no subcommand selected\n";
    return exit_usage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const AuthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_network;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_data;
  }
}
