#include "jsgen/transit.hpp"

#include <algorithm>
#include <sstream>

#include "jsgen/subtoken.hpp"

namespace jsgen {

namespace {

std::string constructor_signature(const Constructor& c) {
  std::string out = c.name + "(";
  for (size_t i = 0; i < c.fields.size(); ++i) {
    if (i) out += ", ";
    out += c.fields[i].type;
    if (c.fields[i].cardinality == Cardinality::Optional) out += "?";
    if (c.fields[i].cardinality == Cardinality::Multiple) out += "*";
    out += " " + c.fields[i].name;
  }
  return out + ")";
}

}  // namespace

std::string action_text(const Action& a, const Grammar& g) {
  switch (a.kind) {
    case Action::Kind::ApplyConstr: return constructor_signature(g.constructor(a.ctor));
    case Action::Kind::Reduce: return "Reduce";
    case Action::Kind::GenSubtoken: return "GenSubtoken[" + a.token + "]";
  }
  return "?";
}

FrontierState::FrontierState(const Grammar& g) : g_(&g) {}

const Field& FrontierState::open_field() const {
  const Frame& f = stack_.back();
  return g_->constructor(f.ctor).fields[f.field];
}

ActionMask FrontierState::legal_actions() const {
  ActionMask m;
  if (done_) return m;
  if (run_ != Run::None) {
    switch (run_) {
      case Run::Ident:
        m.content = true;
        m.eot = true;
        break;
      case Run::String:
        m.content = true;
        m.eos = true;
        break;
      case Run::PlainDone:
        m.eot = true;
        break;
      case Run::None:
        break;
    }
    return m;
  }
  if (stack_.empty()) {
    m.constructors = g_->constructors_for_type(g_->root_type());
    return m;
  }
  const Field& field = open_field();
  if (Grammar::is_primitive(field.type)) {
    m.content = true;
    if (field.type == "literal") m.sos = true;
  } else {
    m.constructors = g_->constructors_for_type(field.type);
  }
  const Frame& f = stack_.back();
  if (field.cardinality == Cardinality::Optional && f.fields[f.field].empty()) m.reduce = true;
  if (field.cardinality == Cardinality::Multiple) m.reduce = true;
  return m;
}

bool FrontierState::permits(const Action& a) const {
  ActionMask m = legal_actions();
  switch (a.kind) {
    case Action::Kind::ApplyConstr:
      return std::find(m.constructors.begin(), m.constructors.end(), a.ctor) !=
             m.constructors.end();
    case Action::Kind::Reduce:
      return m.reduce;
    case Action::Kind::GenSubtoken:
      if (a.token == kEot) return m.eot;
      if (a.token == kSos) return m.sos;
      if (a.token == kEos) return m.eos;
      return m.content && !a.token.empty();
  }
  return false;
}

void FrontierState::apply(const Action& a) {
  if (!permits(a)) {
    illegal(done_ ? "derivation already complete"
                  : "action " + action_text(a, *g_) + " not permitted here");
  }
  ++steps_;
  int applied_step = steps_ - 1;

  switch (a.kind) {
    case Action::Kind::ApplyConstr: {
      const Constructor& c = g_->constructor(a.ctor);
      if (c.fields.empty()) {
        auto node = std::make_shared<AbstractNode>();
        node->ctor = a.ctor;
        if (stack_.empty()) {
          result_ = node;
          done_ = true;
        } else {
          attach_to_frontier(node);
        }
      } else {
        Frame frame;
        frame.ctor = a.ctor;
        frame.applied_step = applied_step;
        frame.fields.resize(c.fields.size());
        stack_.push_back(std::move(frame));
      }
      return;
    }
    case Action::Kind::Reduce: {
      Frame& f = stack_.back();
      ++f.field;
      if (f.field < static_cast<int>(f.fields.size())) return;
      AbstractPtr node = finalize_top();
      if (stack_.empty()) {
        result_ = node;
        done_ = true;
      } else {
        attach_to_frontier(node);
      }
      return;
    }
    case Action::Kind::GenSubtoken: {
      if (a.token == kSos) {
        run_ = Run::String;
        return;
      }
      if (a.token == kEos) {
        std::string text;
        for (const std::string& seg : buffer_) text += seg;
        run_ = Run::None;
        buffer_.clear();
        attach_to_frontier(AbstractLeaf{std::move(text), true});
        return;
      }
      if (a.token == kEot) {
        std::string text = run_ == Run::PlainDone ? buffer_.front() : join_subtokens(buffer_);
        run_ = Run::None;
        buffer_.clear();
        attach_to_frontier(AbstractLeaf{std::move(text), false});
        return;
      }
      if (run_ == Run::None) {
        run_ = open_field().type == "literal" ? Run::PlainDone : Run::Ident;
      }
      buffer_.push_back(a.token);
      return;
    }
  }
}

void FrontierState::attach_to_frontier(AbstractNode::Child item) {
  while (true) {
    Frame& f = stack_.back();
    f.fields[f.field].push_back(std::move(item));
    const Field& field = g_->constructor(f.ctor).fields[f.field];
    if (field.cardinality != Cardinality::Multiple) ++f.field;
    if (f.field < static_cast<int>(f.fields.size())) return;
    AbstractPtr node = finalize_top();
    if (stack_.empty()) {
      result_ = node;
      done_ = true;
      return;
    }
    item = node;
  }
}

AbstractPtr FrontierState::finalize_top() {
  auto node = std::make_shared<AbstractNode>();
  node->ctor = stack_.back().ctor;
  node->fields = std::move(stack_.back().fields);
  stack_.pop_back();
  return node;
}

const AbstractPtr& FrontierState::result() const {
  if (!done_) throw Error("derivation is not complete");
  return result_;
}

int FrontierState::frontier_field_slot() const {
  if (stack_.empty()) return 0;
  return g_->field_slot(stack_.back().ctor, stack_.back().field);
}

int FrontierState::frontier_parent_step() const {
  return stack_.empty() ? -1 : stack_.back().applied_step;
}

namespace {

class OracleEmitter {
 public:
  OracleEmitter(const Grammar& g, bool subtok) : g_(g), subtok_(subtok) {}

  std::vector<Action> run(const AbstractNode& root) {
    const Constructor& c = g_.constructor(root.ctor);
    if (c.result_type != g_.root_type()) {
      throw Error("root constructor " + c.name + " does not produce the root type");
    }
    emit_node(root);
    return std::move(out_);
  }

 private:
  void emit_node(const AbstractNode& n) {
    if (n.ctor < 0 || n.ctor >= g_.constructor_count()) throw Error("bad constructor id");
    const Constructor& c = g_.constructor(n.ctor);
    if (n.fields.size() != c.fields.size()) {
      throw Error("field count mismatch under " + c.name);
    }
    out_.push_back(Action::apply(n.ctor));
    for (size_t fi = 0; fi < c.fields.size(); ++fi) {
      const Field& field = c.fields[fi];
      const auto& items = n.fields[fi];
      if (field.cardinality == Cardinality::Single && items.size() != 1) {
        throw Error("single field " + field.name + " must hold exactly one child");
      }
      if (field.cardinality == Cardinality::Optional && items.size() > 1) {
        throw Error("optional field " + field.name + " holds more than one child");
      }
      for (const auto& item : items) {
        if (std::holds_alternative<AbstractLeaf>(item)) {
          if (!Grammar::is_primitive(field.type)) {
            throw Error("leaf under composite field " + field.name);
          }
          emit_leaf(field.type, std::get<AbstractLeaf>(item));
        } else {
          const AbstractNode& child = *std::get<AbstractPtr>(item);
          if (Grammar::is_primitive(field.type) ||
              g_.constructor(child.ctor).result_type != field.type) {
            throw Error("child type mismatch under field " + field.name);
          }
          emit_node(child);
        }
      }
      if (field.cardinality == Cardinality::Multiple ||
          (field.cardinality == Cardinality::Optional && items.empty())) {
        out_.push_back(Action::reduce());
      }
    }
  }

  void emit_leaf(const std::string& type, const AbstractLeaf& leaf) {
    if (leaf.is_string) {
      if (type != "literal") throw Error("string leaf under non-literal field");
      out_.push_back(Action::gen(kSos));
      if (subtok_) {
        for (std::string& seg : split_string_segments(leaf.text)) {
          out_.push_back(Action::gen(std::move(seg)));
        }
      } else if (!leaf.text.empty()) {
        out_.push_back(Action::gen(leaf.text));
      }
      out_.push_back(Action::gen(kEos));
      return;
    }
    if (leaf.text.empty()) throw Error("empty leaf token");
    if (type == "identifier" && subtok_) {
      for (std::string& piece : subtokenize(leaf.text)) {
        out_.push_back(Action::gen(std::move(piece)));
      }
    } else {
      out_.push_back(Action::gen(leaf.text));
    }
    out_.push_back(Action::gen(kEot));
  }

  const Grammar& g_;
  bool subtok_;
  std::vector<Action> out_;
};

}  // namespace

std::vector<Action> oracle_actions(const AbstractPtr& node, const Grammar& g, bool subtokenize) {
  return OracleEmitter(g, subtokenize).run(*node);
}

AbstractPtr replay(const std::vector<Action>& actions, const Grammar& g) {
  FrontierState state(g);
  for (const Action& a : actions) state.apply(a);
  if (!state.complete()) {
    throw IncompleteDerivationError("sequence ends with an open frontier");
  }
  return state.result();
}

std::string dump_actions(const std::vector<Action>& actions, const Grammar& g) {
  FrontierState state(g);
  std::vector<std::vector<int>> id_stack;  // field numbers per open frame
  int next_field = 1;
  std::ostringstream out;
  for (size_t t = 0; t < actions.size(); ++t) {
    const Action& a = actions[t];
    if (state.depth() == 0) {
      out << "t" << (t + 1) << "\troot\t";
    } else {
      out << "t" << (t + 1) << "\tf" << id_stack.back()[state.open_field_index()] << "\t";
    }
    out << action_text(a, g) << "\n";
    state.apply(a);
    if (a.kind == Action::Kind::ApplyConstr) {
      const Constructor& c = g.constructor(a.ctor);
      std::vector<int> ids(c.fields.size());
      for (int& id : ids) id = next_field++;
      id_stack.push_back(std::move(ids));
    }
    id_stack.resize(state.depth());
  }
  return out.str();
}

}  // namespace jsgen
