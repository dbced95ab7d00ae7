#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jsgen/grammar.hpp"

namespace jsgen {

enum class Provenance { Main, AuxCg, AuxVp };

const char* provenance_name(Provenance p);
Provenance provenance_from_name(std::string_view name);

// One paired record. `description` and `code` are text; tokenization is
// applied on demand. For AuxVp records `code` is a bare variable name, not a
// parseable program.
struct Example {
  std::string description;
  std::string code;
  std::optional<std::string> category;  // STE | OLE | CE | DPE, test records only
  Provenance provenance = Provenance::Main;
  std::vector<std::pair<std::string, std::string>> literals;  // placeholder -> original
};

struct ReplaceResult {
  std::string description;
  std::string code;
  std::vector<std::pair<std::string, std::string>> literals;
  std::vector<std::string> warnings;
};

// Replaces plain string literals (and template quasi segments, segment-wise)
// that occur verbatim in the description with <STR1>, <STR2>, ... in
// code-appearance order, in both texts. Literals absent from the description
// are left untouched and reported. Numbering continues past any placeholders
// already present in the code. `code` must be canonical.
ReplaceResult replace_string_literals(const std::string& description, const std::string& code);

// Collapses static member chains to their final property; computed access and
// call receivers keep their last link (data.coinShowPrice.split(".")[1]
// becomes coinShowPrice.split(".")[1]). Idempotent.
std::string simplify_member_access(const std::string& code);

// CJK characters one token each; contiguous ASCII letter/digit runs one
// token; <STRk> placeholders one token; other non-space characters one token
// each. Whitespace separates.
std::vector<std::string> tokenize_description(std::string_view text);

// Shared token table for description tokens and code subtokens, with reserved
// sentinel indices, plus the grammar's action-constructor index table.
class Vocabulary {
 public:
  static constexpr int kPadIndex = 0;
  static constexpr int kUnkIndex = 1;
  static constexpr int kEotIndex = 2;
  static constexpr int kSosIndex = 3;
  static constexpr int kEosIndex = 4;
  static constexpr int kReservedPlaceholders = 10;  // <STR1>..<STR10>

  Vocabulary();

  // kUnkIndex when absent.
  int index(std::string_view token) const;
  std::optional<int> find(std::string_view token) const;
  const std::string& token(int index) const { return tokens_.at(index); }
  int size() const { return static_cast<int>(tokens_.size()); }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<std::string>& constructor_names() const { return constructor_names_; }
  void set_constructor_names(std::vector<std::string> names) {
    constructor_names_ = std::move(names);
  }

  // Appends if absent; returns the index either way.
  int add(const std::string& token);

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_ && constructor_names_ == other.constructor_names_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> constructor_names_;
};

// Collects description tokens and code subtokens (oracle GenSubtoken payloads
// for parseable records, identifier subtokens for AuxVp records); tokens with
// frequency >= min_count are indexed in first-occurrence order.
Vocabulary build_vocab(const std::vector<Example>& examples, const Grammar& g, bool subtokenize,
                       long min_count = 1);

}  // namespace jsgen
