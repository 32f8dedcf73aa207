// walkthrough — a tour of the library: generate one task per family, print
// its rule and grids, render a prompt, solve it with the oracle, and score
// the oracle's answer through the same parser a model response would use.
#include <iostream>

#include "araoc/eval.hpp"
#include "araoc/gen.hpp"
#include "araoc/json_io.hpp"
#include "araoc/render.hpp"

int main() {
  using namespace araoc;
  Rng rng(2024);

  for (Family family : all_families) {
    Task task = gen_task(family, rng);
    std::cout << "== " << task.family << " ==\n";
    std::cout << "rule: " << to_json(*task.rule).dump() << "\n";
    std::cout << "train example: " << render_matrix_text(task.train[0].input)
              << " -> " << render_matrix_text(task.train[0].output) << "\n";
    std::cout << "test input:    " << render_matrix_text(task.test.input)
              << "\n";

    // The oracle answers exactly like a perfect model would.
    const std::string answer =
        render_matrix_text(apply(task.test.input, *task.rule));
    const ParseOutcome parsed = parse_grid_response("Output grid:\n" + answer);
    const TaskScore score = score_task(parsed, task.test.output, task.id);
    std::cout << "oracle answer: " << answer
              << (score.exact ? "  [exact match]" : "  [MISMATCH]") << "\n\n";
  }

  // One full prompt, as a model would receive it.
  Task sample = gen_task(Family::move, rng);
  const RenderedPrompt prompt = build_prompt(sample, PromptStyle::matrix_standard);
  std::cout << "---- prompt (" << to_string(prompt.style) << ") ----\n";
  std::cout << prompt.user << "\n";
  return 0;
}
