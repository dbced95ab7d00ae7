#pragma once

#include <string>
#include <vector>

#include "jsgen/ast.hpp"
#include "jsgen/errors.hpp"
#include "jsgen/grammar.hpp"

namespace jsgen {

// One step of the transition system.
struct Action {
  enum class Kind { ApplyConstr, Reduce, GenSubtoken };
  Kind kind = Kind::Reduce;
  int ctor = -1;      // ApplyConstr target
  std::string token;  // GenSubtoken payload (subtoken, copied token, or sentinel)

  static Action apply(int ctor) { return {Kind::ApplyConstr, ctor, {}}; }
  static Action reduce() { return {Kind::Reduce, -1, {}}; }
  static Action gen(std::string token) { return {Kind::GenSubtoken, -1, std::move(token)}; }

  bool operator==(const Action&) const = default;
};

std::string action_text(const Action& a, const Grammar& g);

// Kinds of actions permitted at the current frontier. `content` covers any
// non-sentinel GenSubtoken payload; the sentinel flags gate <EOT>/<SOS>/<EOS>.
struct ActionMask {
  std::vector<int> constructors;
  bool reduce = false;
  bool content = false;
  bool eot = false;
  bool sos = false;
  bool eos = false;

  bool any() const {
    return reduce || content || eot || sos || eos || !constructors.empty();
  }
};

// The evolving state of a derivation: a stack of open constructor frames plus
// the pending subtoken buffer of the current primitive field. Value-semantic
// and cheap to copy for beam hypotheses; builds the AbstractNode as it goes.
class FrontierState {
 public:
  explicit FrontierState(const Grammar& g);

  bool complete() const { return done_; }
  int step_count() const { return steps_; }

  ActionMask legal_actions() const;
  bool permits(const Action& a) const;

  // Throws IllegalActionError when the action is outside the mask.
  void apply(const Action& a);

  // The finished tree; only valid when complete().
  const AbstractPtr& result() const;

  // Frontier field for parent feeding: dense slot (0 = root) and the step at
  // which the frontier's constructor was applied (-1 at the root).
  int frontier_field_slot() const;
  int frontier_parent_step() const;

  // Introspection for the debug dump.
  int depth() const { return static_cast<int>(stack_.size()); }
  int open_constructor() const { return stack_.back().ctor; }
  int open_field_index() const { return stack_.back().field; }

 private:
  struct Frame {
    int ctor;
    int field = 0;
    int applied_step;
    std::vector<std::vector<AbstractNode::Child>> fields;
  };

  enum class Run { None, Ident, String, PlainDone };

  const Field& open_field() const;
  void attach_to_frontier(AbstractNode::Child item);
  AbstractPtr finalize_top();
  [[noreturn]] void illegal(const std::string& msg) const {
    throw IllegalActionError(msg, steps_);
  }

  const Grammar* g_;
  std::vector<Frame> stack_;
  Run run_ = Run::None;
  std::vector<std::string> buffer_;
  AbstractPtr result_;
  int steps_ = 0;
  bool done_ = false;
};

// Depth-first, left-to-right derivation of `node`; replaying it reconstructs
// the node exactly. With subtokenize off, every leaf is one token plus its
// terminator (token-level mode).
std::vector<Action> oracle_actions(const AbstractPtr& node, const Grammar& g, bool subtokenize);

// Runs the action sequence through a FrontierState, checking legality at
// every step. Throws IllegalActionError / IncompleteDerivationError.
AbstractPtr replay(const std::vector<Action>& actions, const Grammar& g);

// One action per line: `t<idx>\t<frontier-field>\t<action>`, with fields
// numbered in creation order (root, then f1, f2, ...).
std::string dump_actions(const std::vector<Action>& actions, const Grammar& g);

// Decode-time cap on derivation length.
inline constexpr int kMaxActionsPerDerivation = 200;

}  // namespace jsgen
