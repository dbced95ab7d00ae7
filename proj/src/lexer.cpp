#include "src/js_lexer.hpp"

#include <cctype>
#include <vector>

namespace jsgen::detail {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

void JsLexer::advance() {
  unsigned char b = static_cast<unsigned char>(src_[pos_]);
  if (b == '\n') {
    ++line_;
    column_ = 1;
  } else if ((b & 0xC0) != 0x80) {  // count codepoints, not continuation bytes
    ++column_;
  }
  ++pos_;
}

void JsLexer::skip_ws_and_comments() {
  while (pos_ < src_.size()) {
    char c = src_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '/' && peek(1) == '/') {
      while (pos_ < src_.size() && src_[pos_] != '\n') advance();
    } else if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) advance();
      if (pos_ >= src_.size()) fail("unterminated comment");
      advance();
      advance();
    } else {
      break;
    }
  }
}

char JsLexer::decode_escape() {
  advance();  // consume '\'
  if (pos_ >= src_.size()) fail("dangling escape");
  char c = src_[pos_];
  advance();
  switch (c) {
    case 'n': return '\n';
    case 't': return '\t';
    case 'r': return '\r';
    case '0': return '\0';
    default: return c;  // \\ \' \" \` \$ and anything else: the char itself
  }
}

std::string JsLexer::scan_string(char quote) {
  std::string out;
  advance();  // opening quote
  while (true) {
    if (pos_ >= src_.size()) fail("unterminated string literal");
    char c = src_[pos_];
    if (c == quote) {
      advance();
      return out;
    }
    if (c == '\n') fail("newline in string literal");
    if (c == '\\') {
      out.push_back(decode_escape());
    } else {
      out.push_back(c);
      advance();
    }
  }
}

Token JsLexer::next() {
  skip_ws_and_comments();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  tok.begin = pos_;
  if (pos_ >= src_.size()) {
    tok.kind = TokKind::End;
    tok.end = pos_;
    return tok;
  }
  char c = src_[pos_];

  if (is_ident_start(c)) {
    size_t start = pos_;
    while (pos_ < src_.size() && is_ident_part(src_[pos_])) advance();
    tok.kind = TokKind::Identifier;
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.end = pos_;
    return tok;
  }

  if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
    size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
    if (pos_ < src_.size() && src_[pos_] == '.' && is_digit(peek(1))) {
      advance();
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
    } else if (c == '.') {  // leading-dot form .5
      advance();
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && is_digit(src_[pos_])) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      } else {
        pos_ = mark;  // 'e' was not an exponent; leave it for the next token
      }
    }
    tok.kind = TokKind::Number;
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.end = pos_;
    return tok;
  }

  if (c == '\'' || c == '"') {
    tok.kind = TokKind::String;
    tok.text = scan_string(c);
    tok.end = pos_;
    return tok;
  }

  auto punct = [&](const char* text, int len) {
    tok.kind = TokKind::Punct;
    tok.text = text;
    for (int i = 0; i < len; ++i) advance();
    tok.end = pos_;
    return tok;
  };

  switch (c) {
    case '{': return punct("{", 1);
    case '}': return punct("}", 1);
    case '(': return punct("(", 1);
    case ')': return punct(")", 1);
    case '[': return punct("[", 1);
    case ']': return punct("]", 1);
    case ',': return punct(",", 1);
    case ';': return punct(";", 1);
    case '?': return punct("?", 1);
    case ':': return punct(":", 1);
    case '.': return punct(".", 1);
    case '`': return punct("`", 1);
    case '=':
      if (peek(1) == '=' && peek(2) == '=') return punct("===", 3);
      if (peek(1) == '=') return punct("==", 2);
      if (peek(1) == '>') fail("unsupported construct: arrow function");
      fail("unsupported construct: assignment");
    case '!':
      if (peek(1) == '=' && peek(2) == '=') return punct("!==", 3);
      if (peek(1) == '=') return punct("!=", 2);
      return punct("!", 1);
    case '<': return peek(1) == '=' ? punct("<=", 2) : punct("<", 1);
    case '>': return peek(1) == '=' ? punct(">=", 2) : punct(">", 1);
    case '&':
      if (peek(1) == '&') return punct("&&", 2);
      fail("unsupported construct: bitwise and");
    case '|':
      if (peek(1) == '|') return punct("||", 2);
      fail("unsupported construct: bitwise or");
    case '+':
      if (peek(1) == '+') fail("unsupported construct: increment");
      return punct("+", 1);
    case '-':
      if (peek(1) == '-') fail("unsupported construct: decrement");
      return punct("-", 1);
    case '*': return punct("*", 1);
    case '/': return punct("/", 1);
    case '%': return punct("%", 1);
    default:
      fail("unexpected character");
  }
}

JsLexer::Chunk JsLexer::template_chunk() {
  Chunk chunk;
  chunk.begin = pos_;
  while (true) {
    if (pos_ >= src_.size()) fail("unterminated template literal");
    char c = src_[pos_];
    if (c == '`') {
      advance();
      chunk.ends_with_interp = false;
      chunk.end = pos_;
      return chunk;
    }
    if (c == '$' && peek(1) == '{') {
      advance();
      advance();
      chunk.ends_with_interp = true;
      chunk.end = pos_;
      return chunk;
    }
    if (c == '\\') {
      chunk.cooked.push_back(decode_escape());
    } else {
      chunk.cooked.push_back(c);
      advance();
    }
  }
}

std::vector<std::string> lex_all(std::string_view source) {
  JsLexer lexer(source);
  std::vector<std::string> out;
  // Interpolation nesting: each entry is the open-brace depth inside the
  // current `${ ... }`; a `}` at depth 0 resumes template scanning.
  std::vector<int> interp_depth;

  // Template tokens span backtick/brace to the next `${` or closing backtick,
  // e.g. "`abc${", "}def${", "}xyz`".
  auto chunk_lexeme = [&](size_t prefix_begin) {
    JsLexer::Chunk chunk = lexer.template_chunk();
    out.push_back(std::string(source.substr(prefix_begin, chunk.end - prefix_begin)));
    if (chunk.ends_with_interp) interp_depth.push_back(0);
  };

  while (true) {
    Token tok = lexer.next();
    if (tok.kind == TokKind::End) break;
    if (tok.kind == TokKind::Punct && tok.text == "`") {
      chunk_lexeme(tok.begin);
      continue;
    }
    if (tok.kind == TokKind::Punct && tok.text == "}" && !interp_depth.empty() &&
        interp_depth.back() == 0) {
      interp_depth.pop_back();
      chunk_lexeme(tok.begin);
      continue;
    }
    if (tok.kind == TokKind::Punct && !interp_depth.empty()) {
      if (tok.text == "{") ++interp_depth.back();
      if (tok.text == "}") --interp_depth.back();
    }
    out.push_back(std::string(source.substr(tok.begin, tok.end - tok.begin)));
  }
  return out;
}

}  // namespace jsgen::detail
