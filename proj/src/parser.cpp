#include <memory>
#include <unordered_set>

#include "jsgen/jsfront.hpp"
#include "src/js_lexer.hpp"

namespace jsgen {

namespace {

ConcretePtr node(ConcreteNode&& n) { return std::make_shared<const ConcreteNode>(std::move(n)); }

}  // namespace

const char* binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::StrictEqual: return "===";
    case BinaryOp::NotStrictEqual: return "!==";
    case BinaryOp::Equal: return "==";
    case BinaryOp::NotEqual: return "!=";
    case BinaryOp::Less: return "<";
    case BinaryOp::LessEqual: return "<=";
    case BinaryOp::Greater: return ">";
    case BinaryOp::GreaterEqual: return ">=";
    case BinaryOp::Plus: return "+";
    case BinaryOp::Minus: return "-";
    case BinaryOp::Times: return "*";
    case BinaryOp::Divide: return "/";
    case BinaryOp::Modulo: return "%";
  }
  return "?";
}

const char* logical_op_text(LogicalOp op) { return op == LogicalOp::And ? "&&" : "||"; }

const char* unary_op_text(UnaryOp op) { return op == UnaryOp::Not ? "!" : "-"; }

ConcretePtr make_identifier(std::string name) {
  ConcreteNode n;
  n.kind = NodeKind::Identifier;
  n.text = std::move(name);
  return node(std::move(n));
}

ConcretePtr make_string(std::string value) {
  ConcreteNode n;
  n.kind = NodeKind::Literal;
  n.literal_kind = LiteralKind::String;
  n.text = std::move(value);
  return node(std::move(n));
}

ConcretePtr make_number(std::string spelling) {
  ConcreteNode n;
  n.kind = NodeKind::Literal;
  n.literal_kind = LiteralKind::Number;
  n.text = std::move(spelling);
  return node(std::move(n));
}

ConcretePtr make_bool(bool value) {
  ConcreteNode n;
  n.kind = NodeKind::Literal;
  n.literal_kind = LiteralKind::Bool;
  n.text = value ? "true" : "false";
  return node(std::move(n));
}

ConcretePtr make_null() {
  ConcreteNode n;
  n.kind = NodeKind::Literal;
  n.literal_kind = LiteralKind::Null;
  return node(std::move(n));
}

ConcretePtr make_block(std::vector<ConcretePtr> body) {
  ConcreteNode n;
  n.kind = NodeKind::Block;
  n.children = std::move(body);
  return node(std::move(n));
}

ConcretePtr make_expression_stmt(ConcretePtr expr) {
  ConcreteNode n;
  n.kind = NodeKind::ExpressionStmt;
  n.children = {std::move(expr)};
  return node(std::move(n));
}

ConcretePtr make_break(ConcretePtr label_or_null) {
  ConcreteNode n;
  n.kind = NodeKind::Break;
  if (label_or_null) n.children = {std::move(label_or_null)};
  return node(std::move(n));
}

ConcretePtr make_conditional(ConcretePtr test, ConcretePtr consequent, ConcretePtr alternate) {
  ConcreteNode n;
  n.kind = NodeKind::Conditional;
  n.children = {std::move(test), std::move(consequent), std::move(alternate)};
  return node(std::move(n));
}

ConcretePtr make_binary(BinaryOp op, ConcretePtr left, ConcretePtr right) {
  ConcreteNode n;
  n.kind = NodeKind::Binary;
  n.binary_op = op;
  n.children = {std::move(left), std::move(right)};
  return node(std::move(n));
}

ConcretePtr make_logical(LogicalOp op, ConcretePtr left, ConcretePtr right) {
  ConcreteNode n;
  n.kind = NodeKind::Logical;
  n.logical_op = op;
  n.children = {std::move(left), std::move(right)};
  return node(std::move(n));
}

ConcretePtr make_unary(UnaryOp op, ConcretePtr argument) {
  ConcreteNode n;
  n.kind = NodeKind::Unary;
  n.unary_op = op;
  n.children = {std::move(argument)};
  return node(std::move(n));
}

ConcretePtr make_static_member(ConcretePtr object, std::string property) {
  ConcreteNode n;
  n.kind = NodeKind::StaticMember;
  n.children = {std::move(object)};
  n.text = std::move(property);
  return node(std::move(n));
}

ConcretePtr make_computed_member(ConcretePtr object, ConcretePtr property) {
  ConcreteNode n;
  n.kind = NodeKind::ComputedMember;
  n.children = {std::move(object), std::move(property)};
  return node(std::move(n));
}

ConcretePtr make_call(ConcretePtr callee, std::vector<ConcretePtr> arguments) {
  ConcreteNode n;
  n.kind = NodeKind::Call;
  n.children.reserve(arguments.size() + 1);
  n.children.push_back(std::move(callee));
  for (auto& a : arguments) n.children.push_back(std::move(a));
  return node(std::move(n));
}

ConcretePtr make_template(std::vector<std::string> quasis, std::vector<ConcretePtr> expressions) {
  ConcreteNode n;
  n.kind = NodeKind::Template;
  n.quasis = std::move(quasis);
  n.children = std::move(expressions);
  return node(std::move(n));
}

bool equal(const ConcreteNode& a, const ConcreteNode& b) {
  if (a.kind != b.kind || a.text != b.text || a.quasis != b.quasis) return false;
  switch (a.kind) {
    case NodeKind::Literal:
      if (a.literal_kind != b.literal_kind) return false;
      break;
    case NodeKind::Binary:
      if (a.binary_op != b.binary_op) return false;
      break;
    case NodeKind::Logical:
      if (a.logical_op != b.logical_op) return false;
      break;
    case NodeKind::Unary:
      if (a.unary_op != b.unary_op) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (!equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

bool equal(const AbstractNode& a, const AbstractNode& b) {
  if (a.ctor != b.ctor || a.fields.size() != b.fields.size()) return false;
  for (size_t f = 0; f < a.fields.size(); ++f) {
    if (a.fields[f].size() != b.fields[f].size()) return false;
    for (size_t i = 0; i < a.fields[f].size(); ++i) {
      const auto& ca = a.fields[f][i];
      const auto& cb = b.fields[f][i];
      if (ca.index() != cb.index()) return false;
      if (std::holds_alternative<AbstractLeaf>(ca)) {
        if (!(std::get<AbstractLeaf>(ca) == std::get<AbstractLeaf>(cb))) return false;
      } else {
        if (!equal(std::get<AbstractPtr>(ca), std::get<AbstractPtr>(cb))) return false;
      }
    }
  }
  return true;
}

namespace {

using detail::JsLexer;
using detail::TokKind;
using detail::Token;

const std::unordered_set<std::string>& reserved_words() {
  static const std::unordered_set<std::string> kReserved = {
      "function", "var",   "let",    "const",  "if",     "else",   "while", "for",
      "return",   "new",   "typeof", "this",   "class",  "delete", "void",  "in",
      "of",       "do",    "switch", "case",   "throw",  "try",    "catch", "finally",
      "yield",    "await", "async",  "import", "export", "instanceof",
  };
  return kReserved;
}

class JsParser {
 public:
  explicit JsParser(std::string_view src) : lexer_(src) { advance(); }

  ConcretePtr parse_program() {
    std::vector<ConcretePtr> body;
    if (is_punct("{")) {
      advance();
      while (!is_punct("}")) {
        if (cur_.kind == TokKind::End) fail("expected '}'");
        body.push_back(parse_statement());
      }
      advance();
      expect_end();
    } else {
      // bare expression form
      body.push_back(make_expression_stmt(parse_expression()));
      if (is_punct(";")) advance();
      expect_end();
    }
    return make_block(std::move(body));
  }

 private:
  ConcretePtr parse_statement() {
    if (cur_.kind == TokKind::Identifier && cur_.text == "break") {
      advance();
      ConcretePtr label;
      if (cur_.kind == TokKind::Identifier && !is_keyword_literal(cur_.text) &&
          !reserved_words().count(cur_.text)) {
        label = make_identifier(cur_.text);
        advance();
      }
      if (is_punct(";")) advance();
      return make_break(std::move(label));
    }
    ConcretePtr expr = parse_expression();
    if (is_punct(";")) advance();
    return make_expression_stmt(std::move(expr));
  }

  ConcretePtr parse_expression() { return parse_conditional(); }

  ConcretePtr parse_conditional() {
    ConcretePtr test = parse_or();
    if (!is_punct("?")) return test;
    advance();
    ConcretePtr consequent = parse_conditional();
    if (!is_punct(":")) fail("expected ':' in conditional expression");
    advance();
    ConcretePtr alternate = parse_conditional();
    return make_conditional(std::move(test), std::move(consequent), std::move(alternate));
  }

  ConcretePtr parse_or() {
    ConcretePtr left = parse_and();
    while (is_punct("||")) {
      advance();
      left = make_logical(LogicalOp::Or, std::move(left), parse_and());
    }
    return left;
  }

  ConcretePtr parse_and() {
    ConcretePtr left = parse_equality();
    while (is_punct("&&")) {
      advance();
      left = make_logical(LogicalOp::And, std::move(left), parse_equality());
    }
    return left;
  }

  ConcretePtr parse_equality() {
    ConcretePtr left = parse_relational();
    while (true) {
      BinaryOp op;
      if (is_punct("===")) op = BinaryOp::StrictEqual;
      else if (is_punct("!==")) op = BinaryOp::NotStrictEqual;
      else if (is_punct("==")) op = BinaryOp::Equal;
      else if (is_punct("!=")) op = BinaryOp::NotEqual;
      else break;
      advance();
      left = make_binary(op, std::move(left), parse_relational());
    }
    return left;
  }

  ConcretePtr parse_relational() {
    ConcretePtr left = parse_additive();
    while (true) {
      BinaryOp op;
      if (is_punct("<")) op = BinaryOp::Less;
      else if (is_punct("<=")) op = BinaryOp::LessEqual;
      else if (is_punct(">")) op = BinaryOp::Greater;
      else if (is_punct(">=")) op = BinaryOp::GreaterEqual;
      else break;
      advance();
      left = make_binary(op, std::move(left), parse_additive());
    }
    return left;
  }

  ConcretePtr parse_additive() {
    ConcretePtr left = parse_multiplicative();
    while (true) {
      BinaryOp op;
      if (is_punct("+")) op = BinaryOp::Plus;
      else if (is_punct("-")) op = BinaryOp::Minus;
      else break;
      advance();
      left = make_binary(op, std::move(left), parse_multiplicative());
    }
    return left;
  }

  ConcretePtr parse_multiplicative() {
    ConcretePtr left = parse_unary();
    while (true) {
      BinaryOp op;
      if (is_punct("*")) op = BinaryOp::Times;
      else if (is_punct("/")) op = BinaryOp::Divide;
      else if (is_punct("%")) op = BinaryOp::Modulo;
      else break;
      advance();
      left = make_binary(op, std::move(left), parse_unary());
    }
    return left;
  }

  ConcretePtr parse_unary() {
    if (is_punct("!")) {
      advance();
      return make_unary(UnaryOp::Not, parse_unary());
    }
    if (is_punct("-")) {
      advance();
      return make_unary(UnaryOp::Negate, parse_unary());
    }
    return parse_postfix();
  }

  ConcretePtr parse_postfix() {
    ConcretePtr expr = parse_primary();
    while (true) {
      if (is_punct(".")) {
        advance();
        if (cur_.kind != TokKind::Identifier) fail("expected property name after '.'");
        expr = make_static_member(std::move(expr), cur_.text);
        advance();
      } else if (is_punct("[")) {
        advance();
        ConcretePtr prop = parse_expression();
        if (!is_punct("]")) fail("expected ']'");
        advance();
        expr = make_computed_member(std::move(expr), std::move(prop));
      } else if (is_punct("(")) {
        advance();
        std::vector<ConcretePtr> args;
        if (!is_punct(")")) {
          args.push_back(parse_expression());
          while (is_punct(",")) {
            advance();
            args.push_back(parse_expression());
          }
        }
        if (!is_punct(")")) fail("expected ')'");
        advance();
        expr = make_call(std::move(expr), std::move(args));
      } else {
        return expr;
      }
    }
  }

  ConcretePtr parse_primary() {
    switch (cur_.kind) {
      case TokKind::Identifier: {
        const std::string& word = cur_.text;
        if (word == "true" || word == "false") {
          bool v = word == "true";
          advance();
          return make_bool(v);
        }
        if (word == "null") {
          advance();
          return make_null();
        }
        if (word == "break") fail("'break' is a statement, not an expression");
        if (reserved_words().count(word)) fail("unsupported construct: '" + word + "'");
        ConcretePtr id = make_identifier(word);
        advance();
        return id;
      }
      case TokKind::Number: {
        ConcretePtr num = make_number(cur_.text);
        advance();
        return num;
      }
      case TokKind::String: {
        ConcretePtr str = make_string(cur_.text);
        advance();
        return str;
      }
      case TokKind::Punct:
        if (cur_.text == "(") {
          advance();
          ConcretePtr inner = parse_expression();
          if (!is_punct(")")) fail("expected ')'");
          advance();
          return inner;
        }
        if (cur_.text == "`") return parse_template();
        fail("unexpected token '" + cur_.text + "'");
      case TokKind::End:
        fail("unexpected end of input");
    }
    fail("unexpected token");
  }

  // cur_ is the opening backtick; the lexer is positioned just past it.
  ConcretePtr parse_template() {
    std::vector<std::string> quasis;
    std::vector<ConcretePtr> expressions;
    while (true) {
      JsLexer::Chunk chunk = lexer_.template_chunk();
      quasis.push_back(std::move(chunk.cooked));
      if (!chunk.ends_with_interp) break;
      advance();
      expressions.push_back(parse_expression());
      if (!is_punct("}")) fail("expected '}' closing template interpolation");
      // Do not prefetch: the next bytes belong to the template.
    }
    advance();
    return make_template(std::move(quasis), std::move(expressions));
  }

  static bool is_keyword_literal(const std::string& w) {
    return w == "true" || w == "false" || w == "null";
  }

  bool is_punct(const char* text) const {
    return cur_.kind == TokKind::Punct && cur_.text == text;
  }

  void expect_end() {
    if (cur_.kind != TokKind::End) fail("trailing input after expression");
  }

  [[noreturn]] void fail(const std::string& msg) { JsLexer::fail_at(msg, cur_); }

  void advance() { cur_ = lexer_.next(); }

  JsLexer lexer_;
  Token cur_;
};

}  // namespace

ConcretePtr parse_js(std::string_view source) { return JsParser(source).parse_program(); }

std::vector<std::string> lex_js_tokens(std::string_view source) { return detail::lex_all(source); }

std::string canonicalize_js(std::string_view source) { return print_js(parse_js(source)); }

}  // namespace jsgen
