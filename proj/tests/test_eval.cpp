// Scoring and statistics: exact/shape grading, percentage aggregation,
// questionnaire grading with both index bases, and the exact paired sign
// test checked against an independent tail computation.
#include "catch_amalgamated.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "araoc/eval.hpp"
#include "araoc/gen.hpp"
#include "araoc/render.hpp"

using namespace araoc;

namespace {

Grid G(const std::vector<std::vector<int>>& rows) { return Grid::from_rows(rows); }

ParseOutcome outcome_of(const std::string& text) {
  return parse_grid_response(text);
}

// Independent tail oracle: P(X <= k) for X ~ Binomial(n, 1/2) via a Pascal
// row in 64-bit integers (exact for n <= 62) and a power-of-two divisor.
double tail_by_pascal(int k, int n) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  std::vector<unsigned long long> row{1};  // row n of Pascal's triangle
  for (int r = 1; r <= n; ++r) {
    std::vector<unsigned long long> next(r + 1, 1);
    for (int i = 1; i < r; ++i) next[i] = row[i - 1] + row[i];
    row = std::move(next);
  }
  unsigned long long sum = 0;
  for (int i = 0; i <= k; ++i) sum += row[i];
  return static_cast<double>(sum) /
         static_cast<double>(1ULL << static_cast<unsigned>(n));
}

McNemarResult mcnemar_of(int b, int c) {
  std::vector<PairedOutcome> pairs;
  for (int i = 0; i < b; ++i) pairs.push_back({"p", true, false});
  for (int i = 0; i < c; ++i) pairs.push_back({"p", false, true});
  pairs.push_back({"p", true, true});    // concordant rows never count
  pairs.push_back({"p", false, false});
  return mcnemar_exact(pairs);
}

}  // namespace

// ------------------------------------------------------------------- scoring

TEST_CASE("task scores grade exactness, shape, and parseability") {
  const Grid truth = G({{0, 6}, {0, 0}});

  const TaskScore hit = score_task(outcome_of("[[0,6],[0,0]]"), truth, "t1");
  CHECK(hit.exact);
  CHECK(hit.shape_match);
  CHECK(hit.parse_ok);

  const TaskScore near = score_task(outcome_of("[[6,0],[0,0]]"), truth);
  CHECK_FALSE(near.exact);
  CHECK(near.shape_match);

  const TaskScore misshapen = score_task(outcome_of("[[0,6]]"), truth);
  CHECK_FALSE(misshapen.exact);
  CHECK_FALSE(misshapen.shape_match);
  CHECK(misshapen.parse_ok);

  // Unparseable output counts as a shape mismatch and a parse failure.
  const TaskScore garbled = score_task(outcome_of("I refuse."), truth);
  CHECK_FALSE(garbled.exact);
  CHECK_FALSE(garbled.shape_match);
  CHECK_FALSE(garbled.parse_ok);
}

TEST_CASE("aggregation yields the documented two-decimal percentages") {
  std::vector<TaskScore> scores;
  // 19 exact, 70 same-shape misses, 8 misshapen grids, 3 parse failures:
  // accuracy 19/100, shape mismatch (8+3)/100.
  for (int i = 0; i < 19; ++i)
    scores.push_back({"t", "move", "standard", true, true, true});
  for (int i = 0; i < 70; ++i)
    scores.push_back({"t", "move", "standard", false, true, true});
  for (int i = 0; i < 8; ++i)
    scores.push_back({"t", "copy", "standard", false, false, true});
  for (int i = 0; i < 3; ++i)
    scores.push_back({"t", "copy", "standard", false, false, false});

  const EvalSummary summary = aggregate(scores);
  CHECK(summary.overall.n == 100);
  CHECK(summary.overall.exact == 19);
  CHECK(summary.overall.shape_mismatch == 11);
  CHECK(summary.overall.parse_failures == 3);
  CHECK(format_percent(summary.overall.acc_percent()) == "19.00");
  CHECK(format_percent(summary.overall.not_match_percent()) == "11.00");

  REQUIRE(summary.per_family.count("move") == 1);
  REQUIRE(summary.per_family.count("copy") == 1);
  CHECK(summary.per_family.at("move").n == 89);
  CHECK(summary.per_family.at("move").exact == 19);
  CHECK(summary.per_family.at("copy").shape_mismatch == 11);
  CHECK(summary.per_variant.at("standard").n == 100);

  CHECK_THROWS_AS(aggregate({}), EmptyInputError);
}

TEST_CASE("percent formatting keeps two decimals and rounds") {
  CHECK(format_percent(0.0) == "0.00");
  CHECK(format_percent(100.0) == "100.00");
  CHECK(format_percent(100.0 / 3.0) == "33.33");
  CHECK(format_percent(200.0 / 3.0) == "66.67");
  CHECK(format_percent(2.1484375) == "2.15");
  const GroupStats empty;
  CHECK(empty.acc_percent() == 0.0);
  CHECK(empty.not_match_percent() == 0.0);
}

TEST_CASE("an input-echoing predictor scores 0/0 on moves, all-mismatch on mirrors") {
  auto echo_score = [](const std::vector<Task>& tasks) {
    std::vector<TaskScore> scores;
    for (const Task& task : tasks)
      scores.push_back(
          score_task(outcome_of(render_matrix_text(task.test.input)),
                     task.test.output, task.id, task.family));
    return aggregate(scores);
  };

  const EvalSummary moves = echo_score(gen_small(Family::move, 5, 40));
  CHECK(format_percent(moves.overall.acc_percent()) == "0.00");
  CHECK(format_percent(moves.overall.not_match_percent()) == "0.00");
  CHECK(moves.overall.parse_failures == 0);

  const EvalSummary mirrors = echo_score(gen_mirror_pairs(5, 20));
  CHECK(format_percent(mirrors.overall.acc_percent()) == "0.00");
  CHECK(format_percent(mirrors.overall.not_match_percent()) == "100.00");
}

// --------------------------------------------------------- questionnaire

TEST_CASE("questionnaire grading accepts the canonical answer sheet") {
  const auto [prompt, oracle] = build_matrix_property_prompt(G({{0, 3}, {0, 0}}));
  const std::string response =
      "1.Size:\n(2,2)\n\n"
      "2.Location:\n[(1, 2), (1, 2), (1, 2), (1, 2)]\n\n"
      "3.Transpose:\n[[0, 0], [3, 0]]\n\n"
      "4.Rank:\n1";
  const MatrixPropertyScore score = score_matrix_properties(response, oracle);
  CHECK(score.size);
  CHECK(score.location);
  CHECK(score.transpose);
  CHECK(score.rank);
}

TEST_CASE("questionnaire grading is tolerant in format, strict in content") {
  const auto [prompt, oracle] =
      build_matrix_property_prompt(G({{5, 0}, {0, 6}}));
  // Corners 1-based: (1,1), (1,2), (2,1), (2,2).

  SECTION("labels match case-insensitively, values may be chatty") {
    const MatrixPropertyScore score = score_matrix_properties(
        "1.size: the size is (2, 2)\n"
        "2.location: [(1,1), (1,2), (2,1), (2,2)]\n"
        "3.transpose: here you go [[5,0],[0,6]]\n"
        "4.rank: The rank is 2.",
        oracle);
    CHECK(score.size);
    CHECK(score.location);
    CHECK(score.transpose);
    CHECK(score.rank);
  }

  SECTION("a consistently 0-based corner list also counts") {
    CHECK(score_matrix_properties(
              "Location: [(0,0), (0,1), (1,0), (1,1)]", oracle)
              .location);
  }

  SECTION("mixing index bases within the list does not count") {
    CHECK_FALSE(score_matrix_properties(
                    "Location: [(1,1), (1,2), (1,0), (1,1)]", oracle)
                    .location);
  }

  SECTION("wrong values fail their question only") {
    const MatrixPropertyScore score = score_matrix_properties(
        "1.Size:\n(3,2)\n\n2.Location:\n[(1,1), (1,2), (2,1), (2,2)]\n\n"
        "3.Transpose:\n[[5,0],[6,0]]\n\n4.Rank:\n1",
        oracle);
    CHECK_FALSE(score.size);
    CHECK(score.location);
    CHECK_FALSE(score.transpose);  // wrong matrix
    CHECK_FALSE(score.rank);       // true rank is 2
  }

  SECTION("missing sections grade false") {
    const MatrixPropertyScore score =
        score_matrix_properties("4.Rank:\n2", oracle);
    CHECK_FALSE(score.size);
    CHECK_FALSE(score.location);
    CHECK_FALSE(score.transpose);
    CHECK(score.rank);
  }

  SECTION("a corner list with the wrong arity grades false") {
    CHECK_FALSE(
        score_matrix_properties("Location: [(1,1), (1,2), (2,1)]", oracle)
            .location);
  }
}

// ------------------------------------------------------------ paired testing

TEST_CASE("the sign test reproduces the frozen 1-vs-9 example") {
  const McNemarResult result = mcnemar_of(1, 9);
  CHECK(result.b == 1);
  CHECK(result.c == 9);
  // 2 * (C(10,0) + C(10,1)) / 2^10 = 22/1024, exactly representable.
  CHECK(result.p_two_sided == 22.0 / 1024.0);
  CHECK(result.p_two_sided == 0.021484375);
  CHECK(result.p_one_sided == 11.0 / 1024.0);
}

TEST_CASE("degenerate discordance yields p = 1") {
  const McNemarResult none = mcnemar_of(0, 0);
  CHECK(none.b == 0);
  CHECK(none.c == 0);
  CHECK(none.p_two_sided == 1.0);
  CHECK(none.p_one_sided == 1.0);

  const McNemarResult balanced = mcnemar_of(4, 4);
  CHECK(balanced.p_two_sided == 1.0);

  CHECK_THROWS_AS(mcnemar_exact({}), EmptyInputError);
}

TEST_CASE("the sign test matches an independent tail oracle for all b+c <= 20") {
  for (int b = 0; b <= 20; ++b)
    for (int c = 0; b + c <= 20; ++c) {
      if (b + c == 0) continue;
      const McNemarResult result = mcnemar_of(b, c);
      const double tail = tail_by_pascal(std::min(b, c), b + c);
      CAPTURE(b, c);
      CHECK(result.p_one_sided == tail);
      CHECK(result.p_two_sided == std::min(1.0, 2.0 * tail));
    }
}

TEST_CASE("the sign test is symmetric and rewards lopsidedness") {
  for (int b = 0; b <= 12; ++b)
    for (int c = 0; c <= 12; ++c) {
      if (b + c == 0) continue;
      CHECK(mcnemar_of(b, c).p_two_sided == mcnemar_of(c, b).p_two_sided);
    }
  // For a fixed number of discordant pairs, p rises as the split balances:
  // the extreme split is the most significant.
  for (int n : {6, 11, 20}) {
    double prev = 0.0;
    for (int lo = 0; lo * 2 <= n; ++lo) {
      const double p = mcnemar_of(lo, n - lo).p_two_sided;
      CHECK(p >= prev - 1e-15);
      prev = p;
    }
  }
}

TEST_CASE("large pair counts switch to the log-space tail and stay sane") {
  // n = 127 crosses the exact-integer limit; cross-check against long-double
  // Pascal sums (tiny rounding, so compare with a margin).
  const int b = 50, c = 77, n = b + c;
  std::vector<long double> row{1.0L};
  for (int r = 1; r <= n; ++r) {
    std::vector<long double> next(r + 1, 1.0L);
    for (int i = 1; i < r; ++i) next[i] = row[i - 1] + row[i];
    row = std::move(next);
  }
  long double sum = 0.0L;
  for (int i = 0; i <= b; ++i) sum += row[i];
  const double expected = static_cast<double>(sum / std::pow(2.0L, n));

  const McNemarResult result = mcnemar_of(b, c);
  CHECK_THAT(result.p_one_sided,
             Catch::Matchers::WithinRel(expected, 1e-12));
  CHECK(result.p_two_sided == std::min(1.0, 2.0 * result.p_one_sided));
  CHECK(mcnemar_of(c, b).p_one_sided == result.p_one_sided);

  // Balanced large-n splits are insignificant; extreme ones are significant.
  CHECK(mcnemar_of(100, 100).p_two_sided == 1.0);
  CHECK(mcnemar_of(30, 120).p_two_sided < 1e-12);
}

TEST_CASE("tail boundaries clamp to 0 and 1") {
  CHECK(detail::binomial_cdf_half(-1, 10) == 0.0);
  CHECK(detail::binomial_cdf_half(10, 10) == 1.0);
  CHECK(detail::binomial_cdf_half(11, 10) == 1.0);
  CHECK(detail::binomial_cdf_half(0, 1) == 0.5);
}
