// client.hpp — queries an OpenAI-compatible chat-completions endpoint for
// every task in a benchmark: bounded worker pool, per-request retries with
// backoff, verbatim response capture to append-only JSONL, and crash-safe
// resume keyed on a config fingerprint. The API key is read from an
// environment variable only.
#pragma once

#if !defined(CPPHTTPLIB_OPENSSL_SUPPORT) && !defined(ARAOC_DISABLE_TLS) && \
    __has_include(<openssl/ssl.h>)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"

#include "araoc/json_io.hpp"
#include "araoc/render.hpp"
#include "araoc/rng.hpp"
#include "araoc/task.hpp"

namespace araoc {

class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string endpoint;  // base URL, e.g. "https://api.openai.com/v1"
  std::string model;
  PromptStyle style = PromptStyle::matrix_standard;
  std::optional<double> temperature;  // unset: provider default
  int max_tokens = 3000;
  int timeout_seconds = 120;
  int max_retries = 3;
  double backoff_seconds = 1.0;
  int concurrency = 4;
  std::string api_key_env = "ARAOC_API_KEY";
};

// Semantic identity of a run — the fields that determine what a response
// means. Operational knobs (timeouts, retries, concurrency) may change
// between resumes of the same run.
inline json run_config_json(const RunConfig& config) {
  json j;
  j["endpoint"] = config.endpoint;
  j["model"] = config.model;
  j["style"] = std::string(to_string(config.style));
  j["temperature"] =
      config.temperature ? json(*config.temperature) : json(nullptr);
  j["max_tokens"] = config.max_tokens;
  j["generator_version"] = std::string(generator_version);
  return j;
}

inline std::string run_fingerprint(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    fnv1a64(run_config_json(config).dump())));
  return buf;
}

// Request body for one rendered prompt, in chat-completions wire shape.
inline json chat_request_body(const RunConfig& config,
                              const RenderedPrompt& prompt) {
  json body;
  body["model"] = config.model;
  body["messages"] = json::array({json{{"role", "system"}, {"content", prompt.system}},
                                  json{{"role", "user"}, {"content", prompt.user}}});
  body["max_tokens"] = config.max_tokens;
  if (config.temperature) body["temperature"] = *config.temperature;
  return body;
}

struct QueryStats {
  int total = 0;      // tasks in the input
  int skipped = 0;    // already answered under this fingerprint
  int responded = 0;  // new responses recorded
  int failed = 0;     // recorded with an error after retries
};

namespace detail {

struct EndpointParts {
  std::string base;         // scheme://host[:port]
  std::string path_prefix;  // "" or "/v1"-style prefix, no trailing slash
};

inline EndpointParts split_endpoint(const std::string& endpoint) {
  const std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos)
    throw DataError("endpoint must start with http:// or https://: " + endpoint);
  const std::size_t slash = endpoint.find('/', scheme + 3);
  EndpointParts parts;
  if (slash == std::string::npos) {
    parts.base = endpoint;
  } else {
    parts.base = endpoint.substr(0, slash);
    parts.path_prefix = endpoint.substr(slash);
    while (!parts.path_prefix.empty() && parts.path_prefix.back() == '/')
      parts.path_prefix.pop_back();
  }
  return parts;
}

inline std::string api_key_or_throw(const RunConfig& config) {
  if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key)
    return key;
  if (const char* key = std::getenv("OPENAI_API_KEY"); key && *key) return key;
  throw AuthError("no API key: set $" + config.api_key_env +
                  " (or $OPENAI_API_KEY)");
}

inline bool retriable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace detail

// One request to issue: a stable id plus the rendered messages.
struct PromptJob {
  std::string id;
  RenderedPrompt prompt;
};

// Sends every unanswered prompt to the endpoint and appends one JSON line per
// outcome to `out_path`. The file starts with a ledger line carrying the run
// fingerprint; re-running with the same config resumes (jobs with a recorded
// response are skipped, jobs that previously errored are retried), and a
// fingerprint mismatch aborts rather than mixing two runs in one file.
inline QueryStats run_prompt_queries(const RunConfig& config,
                                     const std::vector<PromptJob>& jobs,
                                     const std::filesystem::path& out_path,
                                     std::ostream* progress = nullptr) {
  const std::string api_key = detail::api_key_or_throw(config);
  const detail::EndpointParts endpoint = detail::split_endpoint(config.endpoint);
  const std::string fingerprint = run_fingerprint(config);

  QueryStats stats;
  stats.total = static_cast<int>(jobs.size());

  std::set<std::string> answered;
  bool need_ledger = true;
  if (std::filesystem::exists(out_path)) {
    std::vector<json> lines = read_jsonl(out_path);
    if (!lines.empty()) {
      const json& head = lines.front();
      if (!head.is_object() || !head.value("ledger", false))
        throw DataError(out_path.string() + ": not a query ledger file");
      if (head.value("fingerprint", std::string{}) != fingerprint)
        throw DataError(out_path.string() +
                        ": run fingerprint mismatch; this file belongs to a "
                        "different configuration");
      need_ledger = false;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        ResponseRecord record =
            response_from_json(lines[i], out_path.string());
        if (!record.error) answered.insert(record.task_id);
      }
    }
  }

  std::ofstream out(out_path, std::ios::app);
  if (!out) throw DataError("cannot open " + out_path.string());
  if (need_ledger) {
    json ledger;
    ledger["ledger"] = true;
    ledger["fingerprint"] = fingerprint;
    ledger["config"] = run_config_json(config);
    out << ledger.dump() << "\n" << std::flush;
  }

  std::vector<const PromptJob*> todo;
  for (const PromptJob& job : jobs) {
    if (answered.count(job.id)) {
      ++stats.skipped;
      continue;
    }
    todo.push_back(&job);
  }

  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> auth_rejected{false};
  std::atomic<int> responded{0}, failed{0};

  auto worker = [&] {
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);
    const httplib::Headers headers = {
        {"Authorization", "Bearer " + api_key}};
    const std::string url = endpoint.path_prefix + "/chat/completions";

    for (std::size_t i = next.fetch_add(1); i < todo.size();
         i = next.fetch_add(1)) {
      if (auth_rejected.load()) return;
      const PromptJob& job = *todo[i];
      const std::string body = chat_request_body(config, job.prompt).dump();

      std::optional<std::string> content;
      std::string error;
      for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0)
          std::this_thread::sleep_for(std::chrono::milliseconds(
              static_cast<long long>(config.backoff_seconds * 1000.0 *
                                     static_cast<double>(1 << (attempt - 1)))));
        httplib::Result res = client.Post(url, headers, body, "application/json");
        if (!res) {
          error = "transport error: " + httplib::to_string(res.error());
          continue;  // retriable
        }
        if (res->status == 401 || res->status == 403) {
          auth_rejected.store(true);
          return;
        }
        if (detail::retriable_status(res->status)) {
          error = "HTTP " + std::to_string(res->status);
          continue;
        }
        if (res->status != 200) {
          error = "HTTP " + std::to_string(res->status) + ": " +
                  res->body.substr(0, 200);
          break;  // not retriable
        }
        try {
          const json reply = json::parse(res->body);
          content = reply.at("choices").at(0).at("message").at("content")
                        .get<std::string>();
        } catch (const json::exception& e) {
          error = std::string("malformed completion payload: ") + e.what();
        }
        break;
      }

      ResponseRecord record{job.id, content.value_or(""),
                            content ? std::nullopt : std::optional(error),
                            std::nullopt};
      {
        std::lock_guard<std::mutex> lock(io_mutex);
        out << to_json(record).dump() << "\n" << std::flush;
        if (content)
          ++responded;
        else
          ++failed;
        const int done = responded + failed;
        if (progress)
          *progress << "[" << done << "/" << todo.size() << "] " << job.id
                    << (content ? "" : "  ERROR: " + error) << "\n";
      }
    }
  };

  const int pool_size =
      std::max(1, std::min<int>(config.concurrency,
                                static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(pool_size));
  for (int w = 0; w < pool_size; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  if (auth_rejected.load())
    throw AuthError("endpoint rejected the API key (HTTP 401/403)");

  stats.responded = responded.load();
  stats.failed = failed.load();
  return stats;
}

// Task-file entry point: renders every task with the configured style.
inline QueryStats run_queries(const RunConfig& config,
                              const std::vector<Task>& tasks,
                              const std::filesystem::path& out_path,
                              std::ostream* progress = nullptr) {
  std::vector<PromptJob> jobs;
  jobs.reserve(tasks.size());
  for (const Task& task : tasks)
    jobs.push_back(PromptJob{task.id, build_prompt(task, config.style)});
  return run_prompt_queries(config, jobs, out_path, progress);
}

}  // namespace araoc
