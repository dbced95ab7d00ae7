#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jsgen/ast.hpp"
#include "jsgen/errors.hpp"
#include "jsgen/grammar.hpp"

namespace jsgen {

// Parses one expression, or a brace-wrapped run of expression statements,
// into a Block-rooted concrete AST. Throws JsParseError on lexical errors
// and unsupported constructs.
ConcretePtr parse_js(std::string_view source);

// Deterministic canonical form: single-quoted strings, spaced operators,
// semicolons before the closing brace, minimal precedence parentheses.
std::string print_js(const ConcretePtr& node);

// parse + print; the canonicalization step of preprocessing.
std::string canonicalize_js(std::string_view source);

// Surface token texts as produced by the lexer (token level, not subtoken);
// the unit BLEU is computed over.
std::vector<std::string> lex_js_tokens(std::string_view source);

// Structure-preserving conversion into the grammar's typed form. Identifier
// names, member property names and literal payloads become primitive leaves.
AbstractPtr to_abstract(const ConcretePtr& node, const Grammar& g);

// Inverse of to_abstract. Throws IllegalJsAstError when relaxed grammar
// typing produced a tree that is not legal JavaScript (non-identifier break
// label, malformed literal spelling, inconsistent template shape, ...).
ConcretePtr to_concrete(const AbstractPtr& node, const Grammar& g);

// Spelling checks used when validating model-generated leaves.
bool is_valid_js_identifier(const std::string& text);
bool is_valid_js_number(const std::string& text);

// Resolved constructor ids for the node kinds the conversions need.
// Fails fast if the grammar is missing one of the expected constructors.
struct GrammarBinding {
  explicit GrammarBinding(const Grammar& g);

  const Grammar* grammar;
  int block, expression_stmt, break_stmt;
  int conditional, binary, logical, unary;
  int static_member, computed_member, call, identifier, literal, template_lit;
  std::vector<int> binary_ops;   // indexed by BinaryOp
  std::vector<int> logical_ops;  // indexed by LogicalOp
  std::vector<int> unary_ops;    // indexed by UnaryOp
};

}  // namespace jsgen
