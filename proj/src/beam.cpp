#include <algorithm>
#include <cmath>

#include "jsgen/jsfront.hpp"
#include "jsgen/neural/model.hpp"

namespace jsgen::neural {

namespace {

struct Hypothesis {
  DecoderRun::StepState state;
  std::vector<Tape::Ref> stildes;  // per-step attentional vectors (parent feeding)
  FrontierState frontier;
  std::vector<Action> actions;
  double score = 0;

  explicit Hypothesis(const Grammar& g) : frontier(g) {}
};

struct Expansion {
  size_t hyp;
  DecoderRun::StepState state;
  int action_index;
  double score;
};

}  // namespace

std::vector<Candidate> beam_decode(const ModelState& m, const Grammar& g,
                                   const std::vector<std::string>& tokens, int width) {
  Tape tape;
  DecoderRun run(tape, m, g, tokens);

  std::vector<Hypothesis> live;
  Hypothesis root(g);
  root.state = run.initial_state();
  live.push_back(std::move(root));
  std::vector<Hypothesis> completed;

  for (int step = 0; step < kMaxActionsPerDerivation && !live.empty() &&
                     static_cast<int>(completed.size()) < width;
       ++step) {
    std::vector<Expansion> expansions;
    for (size_t hi = 0; hi < live.size(); ++hi) {
      Hypothesis& hyp = live[hi];
      const Action* prev = hyp.actions.empty() ? nullptr : &hyp.actions.back();
      int parent_step = hyp.frontier.frontier_parent_step();
      Tape::Ref parent = parent_step >= 0 ? hyp.stildes[parent_step] : Tape::Ref{};
      auto [next, probs] = run.step(hyp.state, prev, parent, hyp.frontier);
      const Mat& p = tape.value(probs);
      for (int idx = 0; idx < p.rows(); ++idx) {
        if (p(idx, 0) <= 0.0) continue;
        double score = hyp.score + std::log(p(idx, 0));
        if (!std::isfinite(score)) continue;
        expansions.push_back({hi, next, idx, score});
      }
    }
    std::stable_sort(expansions.begin(), expansions.end(),
                     [](const Expansion& a, const Expansion& b) { return a.score > b.score; });
    if (expansions.size() > static_cast<size_t>(width)) expansions.resize(width);

    std::vector<Hypothesis> next_live;
    for (const Expansion& exp : expansions) {
      Hypothesis next = live[exp.hyp];
      next.state = exp.state;
      Action action = run.action_at(exp.action_index);
      next.frontier.apply(action);
      next.actions.push_back(std::move(action));
      next.stildes.push_back(exp.state.stilde);
      next.score = exp.score;
      if (next.frontier.complete()) {
        completed.push_back(std::move(next));
      } else {
        next_live.push_back(std::move(next));
      }
    }
    live = std::move(next_live);
  }

  std::stable_sort(completed.begin(), completed.end(),
                   [](const Hypothesis& a, const Hypothesis& b) { return a.score > b.score; });

  std::vector<Candidate> out;
  for (Hypothesis& hyp : completed) {
    if (static_cast<int>(out.size()) >= width) break;
    try {
      ConcretePtr concrete = to_concrete(hyp.frontier.result(), g);
      out.push_back({print_js(concrete), hyp.score, std::move(hyp.actions)});
    } catch (const IllegalJsAstError&) {
      // Relaxed typing let an illegal tree through; drop the candidate.
    }
  }
  return out;
}

}  // namespace jsgen::neural
