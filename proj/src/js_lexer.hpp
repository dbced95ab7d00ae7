#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jsgen/errors.hpp"

namespace jsgen::detail {

enum class TokKind { Identifier, Number, String, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;  // decoded value for String; lexeme text otherwise
  size_t begin = 0;  // raw source span
  size_t end = 0;
  int line = 1;
  int column = 1;
};

// On-demand scanner over a single expression source. Template literals are
// read through template_chunk(), which the parser calls while it knows it is
// inside backticks; everything else comes from next().
class JsLexer {
 public:
  explicit JsLexer(std::string_view src) : src_(src) {}

  Token next();

  struct Chunk {
    std::string cooked;          // decoded quasi text
    bool ends_with_interp;       // true: stopped at `${`; false: stopped at closing backtick
    size_t begin, end;           // raw span including the terminator
  };
  // Scans a template quasi starting at the current position (just past a
  // backtick or a `}` closing an interpolation).
  Chunk template_chunk();

  [[noreturn]] void fail(const std::string& msg) const {
    throw JsParseError(msg, line_, column_);
  }
  [[noreturn]] static void fail_at(const std::string& msg, const Token& tok) {
    throw JsParseError(msg, tok.line, tok.column);
  }

  std::string_view source() const { return src_; }

 private:
  void advance();
  void skip_ws_and_comments();
  char peek(size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  std::string scan_string(char quote);
  char decode_escape();

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Lexes a whole source (driving template mode) and returns raw lexeme texts.
std::vector<std::string> lex_all(std::string_view source);

}  // namespace jsgen::detail
