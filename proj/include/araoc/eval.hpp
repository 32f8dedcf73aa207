// eval.hpp — scores parsed predictions against ground truth, aggregates
// accuracy / shape-mismatch percentages with per-family and per-variant
// breakdowns, grades matrix-property answers, and runs the exact paired
// sign test for left/right mirror comparisons.
#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "araoc/grid.hpp"
#include "araoc/render.hpp"

namespace araoc {

class EmptyInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TaskScore {
  std::string task_id;
  std::string family;
  std::string variant;
  bool exact = false;
  bool shape_match = false;
  bool parse_ok = false;
};

// Exact equality and shape agreement; parse failures miss on both counts.
inline TaskScore score_task(const ParseOutcome& pred, const Grid& truth,
                            std::string task_id = {}, std::string family = {},
                            std::string variant = {}) {
  TaskScore score{std::move(task_id), std::move(family), std::move(variant),
                  false, false, pred.ok()};
  if (pred.ok()) {
    score.shape_match = shape(*pred.grid) == shape(truth);
    score.exact = *pred.grid == truth;
  }
  return score;
}

struct GroupStats {
  int n = 0;
  int exact = 0;
  int shape_mismatch = 0;
  int parse_failures = 0;

  double acc_percent() const { return n == 0 ? 0.0 : 100.0 * exact / n; }
  double not_match_percent() const {
    return n == 0 ? 0.0 : 100.0 * shape_mismatch / n;
  }
};

struct EvalSummary {
  GroupStats overall;
  std::map<std::string, GroupStats> per_family;
  std::map<std::string, GroupStats> per_variant;
};

// Two-decimal rendering used by every report the suite prints.
inline std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

inline EvalSummary aggregate(const std::vector<TaskScore>& scores) {
  if (scores.empty()) throw EmptyInputError("no scores to aggregate");
  EvalSummary summary;
  auto add = [](GroupStats& g, const TaskScore& s) {
    ++g.n;
    if (s.exact) ++g.exact;
    if (!s.shape_match) ++g.shape_mismatch;
    if (!s.parse_ok) ++g.parse_failures;
  };
  for (const TaskScore& s : scores) {
    add(summary.overall, s);
    if (!s.family.empty()) add(summary.per_family[s.family], s);
    if (!s.variant.empty()) add(summary.per_variant[s.variant], s);
  }
  return summary;
}

// ------------------------------------------------- matrix-property grading

struct MatrixPropertyScore {
  bool size = false;
  bool location = false;
  bool transpose = false;
  bool rank = false;
};

namespace detail {

// Integer pairs "(a, b)" appearing in a text section, in order.
inline std::vector<std::pair<int, int>> find_int_pairs(std::string_view text) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '(') continue;
    std::size_t j = i + 1;
    auto read_int = [&]() -> std::optional<int> {
      while (j < text.size() && text[j] == ' ') ++j;
      std::size_t k = j;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
        ++k;
      if (k == j || k - j > 6) return std::nullopt;
      int value = 0;
      for (std::size_t p = j; p < k; ++p) value = value * 10 + (text[p] - '0');
      j = k;
      while (j < text.size() && text[j] == ' ') ++j;
      return value;
    };
    std::optional<int> a = read_int();
    if (!a || j >= text.size() || text[j] != ',') continue;
    ++j;
    std::optional<int> b = read_int();
    if (!b || j >= text.size() || text[j] != ')') continue;
    pairs.emplace_back(*a, *b);
    i = j;
  }
  return pairs;
}

inline std::optional<long long> find_first_int(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) continue;
    long long value = 0;
    std::size_t k = i;
    while (k < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[k])) && k - i < 10)
      value = value * 10 + (text[k++] - '0');
    return value;
  }
  return std::nullopt;
}

inline std::size_t find_ci(std::string_view haystack, std::string_view needle,
                           std::size_t from = 0) {
  if (needle.empty() || haystack.size() < needle.size())
    return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k)
      if (std::tolower(static_cast<unsigned char>(haystack[i + k])) !=
          std::tolower(static_cast<unsigned char>(needle[k]))) {
        match = false;
        break;
      }
    if (match) return i;
  }
  return std::string_view::npos;
}

}  // namespace detail

// Splits the response into the four labeled sections and grades each.
// Location accepts the oracle's 1-based corners or a consistently 0-based
// rendering of the same four cells. Missing sections grade false.
inline MatrixPropertyScore score_matrix_properties(
    std::string_view response, const MatrixPropertyOracle& oracle) {
  const std::array<std::string_view, 4> labels = {"size", "location",
                                                  "transpose", "rank"};
  std::array<std::size_t, 4> at{};
  for (std::size_t q = 0; q < 4; ++q) at[q] = detail::find_ci(response, labels[q]);
  auto section = [&](std::size_t q) -> std::string_view {
    if (at[q] == std::string_view::npos) return {};
    std::size_t begin = at[q] + labels[q].size();
    std::size_t end = response.size();
    for (std::size_t other = 0; other < 4; ++other)
      if (at[other] != std::string_view::npos && at[other] > at[q])
        end = std::min(end, at[other]);
    return std::string_view(response).substr(begin, end - begin);
  };

  MatrixPropertyScore score;
  {
    auto pairs = detail::find_int_pairs(section(0));
    score.size = !pairs.empty() && pairs.front().first == oracle.rows &&
                 pairs.front().second == oracle.cols;
  }
  {
    auto pairs = detail::find_int_pairs(section(1));
    if (pairs.size() == 4) {
      for (int base : {1, 0}) {
        bool all = true;
        for (std::size_t i = 0; i < 4; ++i)
          if (pairs[i].first != oracle.corners[i].row + base ||
              pairs[i].second != oracle.corners[i].col + base)
            all = false;
        if (all) score.location = true;
      }
    }
  }
  {
    ParseOutcome parsed = parse_grid_response(section(2));
    score.transpose = parsed.ok() && *parsed.grid == oracle.transposed;
  }
  {
    auto value = detail::find_first_int(section(3));
    score.rank = value && *value == oracle.rank;
  }
  return score;
}

// --------------------------------------------------------- paired sign test

struct PairedOutcome {
  std::string pair_id;
  bool left_correct = false;
  bool right_correct = false;
};

struct McNemarResult {
  int b = 0;  // pairs where only the left side is correct
  int c = 0;  // pairs where only the right side is correct
  double p_two_sided = 1.0;
  double p_one_sided = 1.0;
};

namespace detail {

// P(X <= k) for X ~ Binomial(n, 1/2). For n <= 126 the binomial sums fit in
// unsigned __int128 and the division by 2^n is exact in binary floating
// point, so the result is the true rational value rounded once.
inline double binomial_cdf_half(int k, int n) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (n <= 126) {
    unsigned __int128 sum = 0, coeff = 1;
    for (int i = 0; i <= k; ++i) {
      sum += coeff;
      coeff = coeff * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    }
    return static_cast<double>(static_cast<long double>(sum) /
                               std::pow(2.0L, n));
  }
  long double sum = 0.0L, log_coeff = 0.0L;
  for (int i = 0; i <= k; ++i) {
    sum += std::exp(log_coeff - n * std::log(2.0L));
    log_coeff += std::log(static_cast<long double>(n - i)) -
                 std::log(static_cast<long double>(i + 1));
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

}  // namespace detail

inline McNemarResult mcnemar_exact(const std::vector<PairedOutcome>& pairs) {
  if (pairs.empty()) throw EmptyInputError("no paired outcomes");
  McNemarResult result;
  for (const PairedOutcome& p : pairs) {
    if (p.left_correct && !p.right_correct) ++result.b;
    if (!p.left_correct && p.right_correct) ++result.c;
  }
  const int n = result.b + result.c;
  if (n == 0) return result;  // no discordance: p = 1 on both sides
  const int lo = std::min(result.b, result.c);
  // X ~ Binomial(n, 1/2) is symmetric, so P(X >= max) = P(X <= lo).
  const double tail = detail::binomial_cdf_half(lo, n);
  result.p_one_sided = tail;
  result.p_two_sided = std::min(1.0, 2.0 * tail);
  return result;
}

}  // namespace araoc
