#include "jsgen/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace jsgen {

namespace {

struct AsdlToken {
  enum class Kind { Name, Equals, LParen, RParen, Comma, Pipe, Question, Star, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

class AsdlLexer {
 public:
  explicit AsdlLexer(std::string_view text) : text_(text) {}

  AsdlToken next() {
    skip_ws_and_comments();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {AsdlToken::Kind::End, "", line, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        advance();
      }
      return {AsdlToken::Kind::Name, std::string(text_.substr(start, pos_ - start)), line, col};
    }
    advance();
    switch (c) {
      case '=': return {AsdlToken::Kind::Equals, "=", line, col};
      case '(': return {AsdlToken::Kind::LParen, "(", line, col};
      case ')': return {AsdlToken::Kind::RParen, ")", line, col};
      case ',': return {AsdlToken::Kind::Comma, ",", line, col};
      case '|': return {AsdlToken::Kind::Pipe, "|", line, col};
      case '?': return {AsdlToken::Kind::Question, "?", line, col};
      case '*': return {AsdlToken::Kind::Star, "*", line, col};
      default:
        throw AsdlError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class AsdlParser {
 public:
  explicit AsdlParser(std::string_view text) : lexer_(text) { cur_ = lexer_.next(); }

  Grammar parse() {
    std::vector<std::string> types;
    std::vector<Constructor> ctors;
    while (cur_.kind != AsdlToken::Kind::End) {
      parse_production(types, ctors);
    }
    if (types.empty()) throw AsdlError("no productions", 1, 1);
    validate(types, ctors);
    return Grammar(std::move(types), std::move(ctors), types_front_);
  }

 private:
  void parse_production(std::vector<std::string>& types, std::vector<Constructor>& ctors) {
    AsdlToken type_tok = expect(AsdlToken::Kind::Name, "type name");
    if (std::find(types.begin(), types.end(), type_tok.text) != types.end()) {
      throw AsdlError("type '" + type_tok.text + "' declared twice", type_tok.line,
                      type_tok.column);
    }
    types.push_back(type_tok.text);
    if (types_front_.empty()) types_front_ = type_tok.text;
    expect(AsdlToken::Kind::Equals, "'='");
    ctors.push_back(parse_constructor(type_tok.text));
    while (cur_.kind == AsdlToken::Kind::Pipe) {
      advance();
      ctors.push_back(parse_constructor(type_tok.text));
    }
  }

  Constructor parse_constructor(const std::string& result_type) {
    AsdlToken name = expect(AsdlToken::Kind::Name, "constructor name");
    Constructor c;
    c.name = name.text;
    c.result_type = result_type;
    expect(AsdlToken::Kind::LParen, "'('");
    if (cur_.kind != AsdlToken::Kind::RParen) {
      c.fields.push_back(parse_field());
      while (cur_.kind == AsdlToken::Kind::Comma) {
        advance();
        c.fields.push_back(parse_field());
      }
    }
    expect(AsdlToken::Kind::RParen, "')'");
    std::unordered_set<std::string> seen;
    for (const Field& f : c.fields) {
      if (!seen.insert(f.name).second) {
        throw AsdlError("duplicate field name '" + f.name + "' in " + c.name, name.line,
                        name.column);
      }
    }
    return c;
  }

  Field parse_field() {
    AsdlToken type_tok = expect(AsdlToken::Kind::Name, "field type");
    Field f;
    f.type = type_tok.text;
    if (cur_.kind == AsdlToken::Kind::Question) {
      f.cardinality = Cardinality::Optional;
      advance();
    } else if (cur_.kind == AsdlToken::Kind::Star) {
      f.cardinality = Cardinality::Multiple;
      advance();
    }
    AsdlToken name_tok = expect(AsdlToken::Kind::Name, "field name");
    f.name = name_tok.text;
    return f;
  }

  void validate(const std::vector<std::string>& types, const std::vector<Constructor>& ctors) {
    std::unordered_set<std::string> declared(types.begin(), types.end());
    std::unordered_set<std::string> names;
    for (const Constructor& c : ctors) {
      if (!names.insert(c.name).second) {
        throw AsdlError("duplicate constructor name '" + c.name + "'", 1, 1);
      }
      for (const Field& f : c.fields) {
        if (!declared.count(f.type) && !Grammar::is_primitive(f.type)) {
          throw AsdlError("unknown field type '" + f.type + "' in " + c.name, 1, 1);
        }
      }
    }
  }

  AsdlToken expect(AsdlToken::Kind kind, const std::string& what) {
    if (cur_.kind != kind) {
      throw AsdlError("expected " + what + (cur_.text.empty() ? "" : ", got '" + cur_.text + "'"),
                      cur_.line, cur_.column);
    }
    AsdlToken tok = cur_;
    advance();
    return tok;
  }

  void advance() { cur_ = lexer_.next(); }

  AsdlLexer lexer_;
  AsdlToken cur_;
  std::string types_front_;
};

}  // namespace

Grammar::Grammar(std::vector<std::string> types, std::vector<Constructor> constructors,
                 std::string root_type)
    : types_(std::move(types)),
      constructors_(std::move(constructors)),
      root_type_(std::move(root_type)) {
  for (const std::string& t : types_) by_type_[t];
  for (size_t i = 0; i < constructors_.size(); ++i) {
    ctor_index_[constructors_[i].name] = static_cast<int>(i);
    by_type_[constructors_[i].result_type].push_back(static_cast<int>(i));
  }
  field_slot_count_ = 1;  // slot 0: root frontier
  field_slot_base_.reserve(constructors_.size());
  for (const Constructor& c : constructors_) {
    field_slot_base_.push_back(field_slot_count_);
    field_slot_count_ += static_cast<int>(c.fields.size());
  }
}

const std::vector<std::string>& Grammar::primitive_types() {
  static const std::vector<std::string> kPrimitives = {"identifier", "literal"};
  return kPrimitives;
}

bool Grammar::is_primitive(std::string_view type) {
  for (const std::string& p : primitive_types()) {
    if (type == p) return true;
  }
  return false;
}

bool Grammar::is_declared_type(std::string_view type) const {
  return by_type_.count(std::string(type)) > 0;
}

int Grammar::constructor_id(std::string_view name) const {
  auto it = ctor_index_.find(std::string(name));
  return it == ctor_index_.end() ? -1 : it->second;
}

const std::vector<int>& Grammar::constructors_for_type(const std::string& type) const {
  static const std::vector<int> kEmpty;
  auto it = by_type_.find(type);
  if (it != by_type_.end()) return it->second;
  if (is_primitive(type)) return kEmpty;
  throw Error("unknown type '" + type + "'");
}

int Grammar::field_slot(int ctor_id, int field_index) const {
  return field_slot_base_[ctor_id] + field_index;
}

std::string print_asdl(const Grammar& g) {
  std::ostringstream out;
  for (const std::string& t : g.types()) {
    out << t << " =";
    bool first = true;
    for (int id : g.constructors_for_type(t)) {
      const Constructor& c = g.constructor(id);
      out << (first ? " " : "\n    | ") << c.name << "(";
      for (size_t i = 0; i < c.fields.size(); ++i) {
        if (i) out << ", ";
        const Field& f = c.fields[i];
        out << f.type;
        if (f.cardinality == Cardinality::Optional) out << "?";
        if (f.cardinality == Cardinality::Multiple) out << "*";
        out << " " << f.name;
      }
      out << ")";
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

Grammar parse_asdl(std::string_view text) { return AsdlParser(text).parse(); }

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_asdl(buf.str());
}

}  // namespace jsgen
