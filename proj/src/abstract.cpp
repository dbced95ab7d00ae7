#include <array>

#include "jsgen/jsfront.hpp"
#include "src/js_lexer.hpp"

namespace jsgen {

namespace {

int require_ctor(const Grammar& g, const char* name) {
  int id = g.constructor_id(name);
  if (id < 0) throw Error(std::string("grammar is missing constructor '") + name + "'");
  return id;
}

constexpr std::array kBinaryOpNames = {
    "StrictEqual", "NotStrictEqual", "Equal", "NotEqual", "Less",   "LessEqual", "Greater",
    "GreaterEqual", "Plus",          "Minus", "Times",    "Divide", "Modulo"};
constexpr std::array kLogicalOpNames = {"And", "Or"};
constexpr std::array kUnaryOpNames = {"Not", "Negate"};

bool is_reserved_or_keyword(const std::string& word) {
  static const std::array<const char*, 4> kKeywordLiterals = {"true", "false", "null", "break"};
  for (const char* k : kKeywordLiterals) {
    if (word == k) return true;
  }
  static const std::array<const char*, 30> kReserved = {
      "function", "var",   "let",    "const",  "if",     "else",   "while", "for",
      "return",   "new",   "typeof", "this",   "class",  "delete", "void",  "in",
      "of",       "do",    "switch", "case",   "throw",  "try",    "catch", "finally",
      "yield",    "await", "async",  "import", "export", "instanceof"};
  for (const char* k : kReserved) {
    if (word == k) return true;
  }
  return false;
}

// Does `text` lex as exactly one token of the given kind?
bool lexes_as(const std::string& text, detail::TokKind kind) {
  if (text.empty()) return false;
  try {
    detail::JsLexer lexer(text);
    detail::Token tok = lexer.next();
    return tok.kind == kind && tok.end == text.size() && lexer.next().kind == detail::TokKind::End;
  } catch (const JsParseError&) {
    return false;
  }
}

}  // namespace

bool is_valid_js_identifier(const std::string& text) {
  return lexes_as(text, detail::TokKind::Identifier) && !is_reserved_or_keyword(text);
}

bool is_valid_js_number(const std::string& text) {
  return lexes_as(text, detail::TokKind::Number);
}

GrammarBinding::GrammarBinding(const Grammar& g) : grammar(&g) {
  block = require_ctor(g, "BlockStatement");
  expression_stmt = require_ctor(g, "ExpressionStatement");
  break_stmt = require_ctor(g, "BreakStatement");
  conditional = require_ctor(g, "ConditionalExpression");
  binary = require_ctor(g, "BinaryExpression");
  logical = require_ctor(g, "LogicalExpression");
  unary = require_ctor(g, "UnaryExpression");
  static_member = require_ctor(g, "StaticMember");
  computed_member = require_ctor(g, "ComputedMember");
  call = require_ctor(g, "CallExpression");
  identifier = require_ctor(g, "Identifier");
  literal = require_ctor(g, "Literal");
  template_lit = require_ctor(g, "TemplateLiteral");
  for (const char* name : kBinaryOpNames) binary_ops.push_back(require_ctor(g, name));
  for (const char* name : kLogicalOpNames) logical_ops.push_back(require_ctor(g, name));
  for (const char* name : kUnaryOpNames) unary_ops.push_back(require_ctor(g, name));
}

namespace {

using Child = AbstractNode::Child;

AbstractPtr abstract_node(int ctor, std::vector<std::vector<Child>> fields) {
  auto n = std::make_shared<AbstractNode>();
  n->ctor = ctor;
  n->fields = std::move(fields);
  return n;
}

AbstractPtr nullary(int ctor) { return abstract_node(ctor, {}); }

Child leaf(std::string text, bool is_string = false) {
  return AbstractLeaf{std::move(text), is_string};
}

class ToAbstract {
 public:
  explicit ToAbstract(const GrammarBinding& b) : b_(b) {}

  AbstractPtr convert(const ConcreteNode& n) {
    switch (n.kind) {
      case NodeKind::Block: {
        std::vector<Child> body;
        for (const auto& stmt : n.children) body.push_back(convert(*stmt));
        return abstract_node(b_.block, {std::move(body)});
      }
      case NodeKind::ExpressionStmt:
        return abstract_node(b_.expression_stmt, {{convert(*n.children[0])}});
      case NodeKind::Break: {
        std::vector<Child> label;
        if (!n.children.empty()) label.push_back(convert(*n.children[0]));
        return abstract_node(b_.break_stmt, {std::move(label)});
      }
      case NodeKind::Conditional:
        // Grammar field order (test, alternate, consequent) maps positionally:
        // slot 1 holds the '?' branch, slot 2 the ':' branch.
        return abstract_node(b_.conditional, {{convert(*n.children[0])},
                                              {convert(*n.children[1])},
                                              {convert(*n.children[2])}});
      case NodeKind::Binary:
        return abstract_node(b_.binary,
                             {{nullary(b_.binary_ops[static_cast<int>(n.binary_op)])},
                              {convert(*n.children[0])},
                              {convert(*n.children[1])}});
      case NodeKind::Logical:
        return abstract_node(b_.logical,
                             {{nullary(b_.logical_ops[static_cast<int>(n.logical_op)])},
                              {convert(*n.children[0])},
                              {convert(*n.children[1])}});
      case NodeKind::Unary:
        return abstract_node(b_.unary, {{nullary(b_.unary_ops[static_cast<int>(n.unary_op)])},
                                        {convert(*n.children[0])}});
      case NodeKind::StaticMember:
        return abstract_node(b_.static_member, {{convert(*n.children[0])}, {leaf(n.text)}});
      case NodeKind::ComputedMember:
        return abstract_node(b_.computed_member,
                             {{convert(*n.children[0])}, {convert(*n.children[1])}});
      case NodeKind::Call: {
        std::vector<Child> args;
        for (size_t i = 1; i < n.children.size(); ++i) args.push_back(convert(*n.children[i]));
        return abstract_node(b_.call, {{convert(*n.children[0])}, std::move(args)});
      }
      case NodeKind::Identifier:
        return abstract_node(b_.identifier, {{leaf(n.text)}});
      case NodeKind::Literal:
        switch (n.literal_kind) {
          case LiteralKind::Null:
            return abstract_node(b_.literal, {{}});
          case LiteralKind::String:
            return abstract_node(b_.literal, {{leaf(n.text, true)}});
          case LiteralKind::Number:
          case LiteralKind::Bool:
            return abstract_node(b_.literal, {{leaf(n.text)}});
        }
        throw Error("bad literal kind");
      case NodeKind::Template: {
        std::vector<Child> quasis;
        for (const std::string& q : n.quasis) quasis.push_back(leaf(q, true));
        std::vector<Child> exprs;
        for (const auto& e : n.children) exprs.push_back(convert(*e));
        return abstract_node(b_.template_lit, {std::move(quasis), std::move(exprs)});
      }
    }
    throw Error("unsupported node kind");
  }

 private:
  const GrammarBinding& b_;
};

class ToConcrete {
 public:
  explicit ToConcrete(const GrammarBinding& b) : b_(b) {}

  ConcretePtr convert(const AbstractNode& n) {
    int c = n.ctor;
    if (c == b_.block) {
      std::vector<ConcretePtr> body;
      for (const Child& ch : field(n, 0)) body.push_back(convert(child_node(ch)));
      return make_block(std::move(body));
    }
    if (c == b_.expression_stmt) return make_expression_stmt(convert(single(n, 0)));
    if (c == b_.break_stmt) {
      const auto& label = field(n, 0);
      if (label.empty()) return make_break(nullptr);
      const AbstractNode& ln = child_node(label[0]);
      if (ln.ctor != b_.identifier) {
        throw IllegalJsAstError("break label must be an identifier");
      }
      return make_break(convert(ln));
    }
    if (c == b_.conditional) {
      return make_conditional(convert(single(n, 0)), convert(single(n, 1)),
                              convert(single(n, 2)));
    }
    if (c == b_.binary) {
      return make_binary(op_of(b_.binary_ops, single(n, 0), BinaryOp{}), convert(single(n, 1)),
                         convert(single(n, 2)));
    }
    if (c == b_.logical) {
      return make_logical(op_of(b_.logical_ops, single(n, 0), LogicalOp{}), convert(single(n, 1)),
                          convert(single(n, 2)));
    }
    if (c == b_.unary) {
      return make_unary(op_of(b_.unary_ops, single(n, 0), UnaryOp{}), convert(single(n, 1)));
    }
    if (c == b_.static_member) {
      return make_static_member(convert(single(n, 0)), identifier_leaf(n, 1));
    }
    if (c == b_.computed_member) {
      return make_computed_member(convert(single(n, 0)), convert(single(n, 1)));
    }
    if (c == b_.call) {
      std::vector<ConcretePtr> args;
      for (const Child& ch : field(n, 1)) args.push_back(convert(child_node(ch)));
      return make_call(convert(single(n, 0)), std::move(args));
    }
    if (c == b_.identifier) return make_identifier(identifier_leaf(n, 0));
    if (c == b_.literal) {
      const auto& value = field(n, 0);
      if (value.empty()) return make_null();
      const AbstractLeaf& l = leaf_of(value[0]);
      if (l.is_string) return make_string(l.text);
      if (l.text == "true" || l.text == "false") return make_bool(l.text == "true");
      if (!is_valid_js_number(l.text)) {
        throw IllegalJsAstError("'" + l.text + "' is not a number literal");
      }
      return make_number(l.text);
    }
    if (c == b_.template_lit) {
      const auto& quasi_field = field(n, 0);
      const auto& expr_field = field(n, 1);
      if (quasi_field.size() != expr_field.size() + 1) {
        throw IllegalJsAstError("template needs one more quasi than interpolations");
      }
      std::vector<std::string> quasis;
      for (const Child& q : quasi_field) {
        const AbstractLeaf& l = leaf_of(q);
        if (!l.is_string) throw IllegalJsAstError("template quasi must be a string segment");
        quasis.push_back(l.text);
      }
      std::vector<ConcretePtr> exprs;
      for (const Child& e : expr_field) exprs.push_back(convert(child_node(e)));
      return make_template(std::move(quasis), std::move(exprs));
    }
    throw Error("constructor '" + b_.grammar->constructor(c).name +
                "' has no concrete JavaScript form");
  }

 private:
  static const std::vector<Child>& field(const AbstractNode& n, size_t i) {
    if (i >= n.fields.size()) throw Error("abstract node is missing a field");
    return n.fields[i];
  }

  static const AbstractNode& child_node(const Child& ch) {
    if (!std::holds_alternative<AbstractPtr>(ch)) throw Error("expected a subtree, got a leaf");
    return *std::get<AbstractPtr>(ch);
  }

  static const AbstractLeaf& leaf_of(const Child& ch) {
    if (!std::holds_alternative<AbstractLeaf>(ch)) throw Error("expected a leaf, got a subtree");
    return std::get<AbstractLeaf>(ch);
  }

  const AbstractNode& single(const AbstractNode& n, size_t i) {
    const auto& f = field(n, i);
    if (f.size() != 1) throw Error("field arity mismatch");
    return child_node(f[0]);
  }

  std::string identifier_leaf(const AbstractNode& n, size_t i) {
    const auto& f = field(n, i);
    if (f.size() != 1) throw Error("field arity mismatch");
    const AbstractLeaf& l = leaf_of(f[0]);
    if (l.is_string || !is_valid_js_identifier(l.text)) {
      throw IllegalJsAstError("'" + l.text + "' is not a valid identifier");
    }
    return l.text;
  }

  template <typename Op>
  Op op_of(const std::vector<int>& ids, const AbstractNode& op_node, Op) {
    for (size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == op_node.ctor) return static_cast<Op>(i);
    }
    throw IllegalJsAstError("expected an operator constructor");
  }

  const GrammarBinding& b_;
};

}  // namespace

AbstractPtr to_abstract(const ConcretePtr& node, const Grammar& g) {
  GrammarBinding binding(g);
  return ToAbstract(binding).convert(*node);
}

ConcretePtr to_concrete(const AbstractPtr& node, const Grammar& g) {
  GrammarBinding binding(g);
  return ToConcrete(binding).convert(*node);
}

}  // namespace jsgen
