#include "jsgen/prep.hpp"

#include <algorithm>

#include "jsgen/jsfront.hpp"
#include "jsgen/subtoken.hpp"
#include "jsgen/transit.hpp"

namespace jsgen {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Main: return "main";
    case Provenance::AuxCg: return "aux_cg";
    case Provenance::AuxVp: return "aux_vp";
  }
  return "main";
}

Provenance provenance_from_name(std::string_view name) {
  if (name == "aux_cg") return Provenance::AuxCg;
  if (name == "aux_vp") return Provenance::AuxVp;
  if (name == "main" || name.empty()) return Provenance::Main;
  throw DataError("unknown provenance '" + std::string(name) + "'");
}

namespace {

bool is_whitespace_only(const std::string& s) {
  return s.find_first_not_of(" \t\n\r") == std::string::npos;
}

// Matches <STR...> with at least one digit; returns length or 0.
size_t placeholder_length(std::string_view text, size_t at) {
  static constexpr std::string_view kPrefix = "<STR";
  if (text.substr(at, kPrefix.size()) != kPrefix) return 0;
  size_t i = at + kPrefix.size();
  size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    ++i;
    ++digits;
  }
  if (digits == 0 || i >= text.size() || text[i] != '>') return 0;
  return i + 1 - at;
}

bool is_placeholder(const std::string& s) {
  return !s.empty() && placeholder_length(s, 0) == s.size();
}

int max_placeholder_number(std::string_view text) {
  int max_k = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    size_t len = placeholder_length(text, i);
    if (len > 0) {
      int k = std::stoi(std::string(text.substr(i + 4, len - 5)));
      max_k = std::max(max_k, k);
    }
  }
  return max_k;
}

class LiteralReplacer {
 public:
  LiteralReplacer(std::string description, int first_number)
      : description_(std::move(description)), next_number_(first_number) {}

  // Returns the replacement text, or nullopt to keep the literal as is.
  std::optional<std::string> replace(const std::string& text) {
    if (text.empty() || is_whitespace_only(text) || is_placeholder(text)) return std::nullopt;
    size_t at = description_.find(text);
    if (at == std::string::npos) {
      warnings_.push_back("string literal not found in description: '" + text + "'");
      return std::nullopt;
    }
    std::string placeholder = "<STR" + std::to_string(next_number_++) + ">";
    description_.replace(at, text.size(), placeholder);
    literals_.emplace_back(placeholder, text);
    return placeholder;
  }

  ConcretePtr transform(const ConcreteNode& n) {
    if (n.kind == NodeKind::Literal && n.literal_kind == LiteralKind::String) {
      if (auto repl = replace(n.text)) return make_string(*repl);
      return std::make_shared<const ConcreteNode>(n);
    }
    if (n.kind == NodeKind::Template) {
      // Walk in code-appearance order: quasi, expression, quasi, ...
      std::vector<std::string> quasis;
      std::vector<ConcretePtr> exprs;
      for (size_t i = 0; i < n.quasis.size(); ++i) {
        auto repl = replace(n.quasis[i]);
        quasis.push_back(repl ? *repl : n.quasis[i]);
        if (i < n.children.size()) exprs.push_back(transform(*n.children[i]));
      }
      return make_template(std::move(quasis), std::move(exprs));
    }
    ConcreteNode copy = n;
    copy.children.clear();
    for (const auto& child : n.children) copy.children.push_back(transform(*child));
    return std::make_shared<const ConcreteNode>(std::move(copy));
  }

  std::string description_;
  std::vector<std::pair<std::string, std::string>> literals_;
  std::vector<std::string> warnings_;
  int next_number_;
};

}  // namespace

ReplaceResult replace_string_literals(const std::string& description, const std::string& code) {
  ConcretePtr tree = parse_js(code);
  LiteralReplacer replacer(description, max_placeholder_number(code) + 1);
  ConcretePtr replaced = replacer.transform(*tree);
  ReplaceResult result;
  result.description = std::move(replacer.description_);
  result.code = print_js(replaced);
  result.literals = std::move(replacer.literals_);
  result.warnings = std::move(replacer.warnings_);
  return result;
}

namespace {

// A chain of static member accesses over a bare identifier base.
bool is_pure_static_chain(const ConcreteNode& n) {
  if (n.kind == NodeKind::Identifier) return true;
  return n.kind == NodeKind::StaticMember && is_pure_static_chain(*n.children[0]);
}

ConcretePtr simplify_node(const ConcreteNode& n);

// Receiver of a method call: collapse a pure chain to its last property but
// keep a bare identifier, so data.coinShowPrice.split stays coinShowPrice.split.
ConcretePtr simplify_receiver(const ConcreteNode& n) {
  if (n.kind == NodeKind::StaticMember && is_pure_static_chain(n)) {
    return make_identifier(n.text);
  }
  return simplify_node(n);
}

ConcretePtr simplify_node(const ConcreteNode& n) {
  if (n.kind == NodeKind::StaticMember) {
    if (is_pure_static_chain(n)) return make_identifier(n.text);
    return make_static_member(simplify_node(*n.children[0]), n.text);
  }
  if (n.kind == NodeKind::Call) {
    const ConcreteNode& callee = *n.children[0];
    ConcretePtr new_callee;
    if (callee.kind == NodeKind::StaticMember) {
      new_callee = make_static_member(simplify_receiver(*callee.children[0]), callee.text);
    } else {
      new_callee = simplify_node(callee);
    }
    std::vector<ConcretePtr> args;
    for (size_t i = 1; i < n.children.size(); ++i) args.push_back(simplify_node(*n.children[i]));
    return make_call(std::move(new_callee), std::move(args));
  }
  ConcreteNode copy = n;
  copy.children.clear();
  for (const auto& child : n.children) copy.children.push_back(simplify_node(*child));
  return std::make_shared<const ConcreteNode>(std::move(copy));
}

}  // namespace

std::string simplify_member_access(const std::string& code) {
  return print_js(simplify_node(*parse_js(code)));
}

std::vector<std::string> tokenize_description(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  std::string ascii_run;
  auto flush_run = [&] {
    if (!ascii_run.empty()) {
      tokens.push_back(std::move(ascii_run));
      ascii_run.clear();
    }
  };
  while (i < text.size()) {
    unsigned char lead = static_cast<unsigned char>(text[i]);
    if (lead < 0x80) {
      char c = static_cast<char>(lead);
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        flush_run();
        ++i;
        continue;
      }
      if (size_t len = placeholder_length(text, i); len > 0) {
        flush_run();
        tokens.emplace_back(text.substr(i, len));
        i += len;
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c))) {
        ascii_run.push_back(c);
        ++i;
        continue;
      }
      flush_run();
      tokens.emplace_back(1, c);
      ++i;
      continue;
    }
    flush_run();
    size_t len = utf8_sequence_length(lead);
    if (i + len > text.size()) len = 1;
    std::string_view seq = text.substr(i, len);
    if (seq == "\xe3\x80\x80") {  // U+3000 ideographic space
      i += len;
      continue;
    }
    tokens.emplace_back(seq);
    i += len;
  }
  flush_run();
  return tokens;
}

Vocabulary::Vocabulary() {
  add(kPad);
  add(kUnk);
  add(kEot);
  add(kSos);
  add(kEos);
  for (int k = 1; k <= kReservedPlaceholders; ++k) {
    add("<STR" + std::to_string(k) + ">");
  }
}

int Vocabulary::index(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkIndex : it->second;
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::add(const std::string& token) {
  auto [it, inserted] = index_.try_emplace(token, static_cast<int>(tokens_.size()));
  if (inserted) tokens_.push_back(token);
  return it->second;
}

std::vector<std::string> example_code_subtokens(const Example& ex, const Grammar& g,
                                                bool subtokenize_flag);

std::vector<std::string> example_code_subtokens(const Example& ex, const Grammar& g,
                                                bool subtokenize_flag) {
  std::vector<std::string> out;
  if (ex.provenance == Provenance::AuxVp) {
    if (subtokenize_flag) {
      out = subtokenize(ex.code);
    } else {
      out.push_back(ex.code);
    }
    return out;
  }
  AbstractPtr tree = to_abstract(parse_js(ex.code), g);
  for (const Action& a : oracle_actions(tree, g, subtokenize_flag)) {
    if (a.kind == Action::Kind::GenSubtoken && !is_sentinel(a.token)) out.push_back(a.token);
  }
  return out;
}

Vocabulary build_vocab(const std::vector<Example>& examples, const Grammar& g, bool subtokenize,
                       long min_count) {
  std::unordered_map<std::string, long> counts;
  std::vector<std::string> order;
  auto count = [&](const std::string& tok) {
    if (++counts[tok] == 1) order.push_back(tok);
  };
  for (const Example& ex : examples) {
    for (const std::string& tok : tokenize_description(ex.description)) count(tok);
    for (const std::string& tok : example_code_subtokens(ex, g, subtokenize)) count(tok);
  }
  Vocabulary vocab;
  for (const std::string& tok : order) {
    if (counts[tok] >= min_count) vocab.add(tok);
  }
  std::vector<std::string> ctor_names;
  for (const Constructor& c : g.constructors()) ctor_names.push_back(c.name);
  vocab.set_constructor_names(std::move(ctor_names));
  return vocab;
}

}  // namespace jsgen
