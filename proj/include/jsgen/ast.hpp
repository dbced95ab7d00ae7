#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace jsgen {

// Concrete AST for the supported JavaScript expression subset, mirroring the
// Mozilla-Parser-API shapes the grammar covers. Nodes are immutable and
// shared; trees are value-like.
enum class NodeKind {
  Block,
  ExpressionStmt,
  Break,
  Conditional,
  Binary,
  Logical,
  Unary,
  StaticMember,
  ComputedMember,
  Call,
  Identifier,
  Literal,
  Template,
};

enum class LiteralKind { String, Number, Bool, Null };

enum class BinaryOp {
  StrictEqual,
  NotStrictEqual,
  Equal,
  NotEqual,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  Plus,
  Minus,
  Times,
  Divide,
  Modulo,
};

enum class LogicalOp { And, Or };
enum class UnaryOp { Not, Negate };

const char* binary_op_text(BinaryOp op);
const char* logical_op_text(LogicalOp op);
const char* unary_op_text(UnaryOp op);

struct ConcreteNode;
using ConcretePtr = std::shared_ptr<const ConcreteNode>;

struct ConcreteNode {
  NodeKind kind;

  // Block: body statements. ExpressionStmt: [expression]. Break: [] or [label].
  // Conditional: [test, consequent, alternate]. Binary/Logical: [left, right].
  // Unary: [argument]. StaticMember: [object]. ComputedMember: [object, property].
  // Call: [callee, args...]. Template: interpolated expressions.
  std::vector<ConcretePtr> children;

  // Identifier name; Literal payload (see literal_kind); StaticMember property name.
  std::string text;
  LiteralKind literal_kind = LiteralKind::Null;

  BinaryOp binary_op = BinaryOp::StrictEqual;
  LogicalOp logical_op = LogicalOp::And;
  UnaryOp unary_op = UnaryOp::Not;

  // Template: cooked quasi segments; always children.size() + 1 of them.
  std::vector<std::string> quasis;
};

bool equal(const ConcreteNode& a, const ConcreteNode& b);
inline bool equal(const ConcretePtr& a, const ConcretePtr& b) { return equal(*a, *b); }

ConcretePtr make_identifier(std::string name);
ConcretePtr make_string(std::string value);
ConcretePtr make_number(std::string spelling);
ConcretePtr make_bool(bool value);
ConcretePtr make_null();
ConcretePtr make_block(std::vector<ConcretePtr> body);
ConcretePtr make_expression_stmt(ConcretePtr expr);
ConcretePtr make_break(ConcretePtr label_or_null);
ConcretePtr make_conditional(ConcretePtr test, ConcretePtr consequent, ConcretePtr alternate);
ConcretePtr make_binary(BinaryOp op, ConcretePtr left, ConcretePtr right);
ConcretePtr make_logical(LogicalOp op, ConcretePtr left, ConcretePtr right);
ConcretePtr make_unary(UnaryOp op, ConcretePtr argument);
ConcretePtr make_static_member(ConcretePtr object, std::string property);
ConcretePtr make_computed_member(ConcretePtr object, ConcretePtr property);
ConcretePtr make_call(ConcretePtr callee, std::vector<ConcretePtr> arguments);
ConcretePtr make_template(std::vector<std::string> quasis, std::vector<ConcretePtr> expressions);

// Grammar-typed AST. Children are grouped per constructor field; a leaf is a
// token under a primitive-typed field, with string-literal payloads flagged
// so replay and printing can tell 'live' from live.
struct AbstractNode;
using AbstractPtr = std::shared_ptr<const AbstractNode>;

struct AbstractLeaf {
  std::string text;
  bool is_string = false;

  bool operator==(const AbstractLeaf&) const = default;
};

struct AbstractNode {
  int ctor = -1;  // constructor id in the Grammar
  using Child = std::variant<AbstractPtr, AbstractLeaf>;
  std::vector<std::vector<Child>> fields;  // one vector per constructor field
};

bool equal(const AbstractNode& a, const AbstractNode& b);
inline bool equal(const AbstractPtr& a, const AbstractPtr& b) { return equal(*a, *b); }

}  // namespace jsgen
