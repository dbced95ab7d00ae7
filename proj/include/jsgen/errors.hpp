#pragma once

#include <stdexcept>
#include <string>

namespace jsgen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ASDL grammar text problems; positions are 1-based.
struct AsdlError : Error {
  AsdlError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Lexical/syntactic/unsupported-construct problems in JavaScript source.
struct JsParseError : Error {
  JsParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

// A grammar-conforming AST that is not legal JavaScript (relaxed typing).
// Beam search discards candidates that raise this.
struct IllegalJsAstError : Error {
  using Error::Error;
};

// An action outside the legality mask of the current frontier state.
struct IllegalActionError : Error {
  IllegalActionError(const std::string& msg, int step)
      : Error(msg + " (at step " + std::to_string(step) + ")"), step(step) {}
  int step;
};

// An action sequence that ends with an open frontier.
struct IncompleteDerivationError : Error {
  using Error::Error;
};

// Malformed corpus records, missing files, checkpoint mismatches.
struct DataError : Error {
  using Error::Error;
};

}  // namespace jsgen
