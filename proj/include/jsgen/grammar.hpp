#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jsgen/errors.hpp"

namespace jsgen {

enum class Cardinality { Single, Optional, Multiple };

struct Field {
  std::string name;
  std::string type;
  Cardinality cardinality = Cardinality::Single;

  bool operator==(const Field&) const = default;
};

struct Constructor {
  std::string name;
  std::string result_type;
  std::vector<Field> fields;

  bool operator==(const Constructor&) const = default;
};

// An ASDL grammar: declared types, their constructors in declaration order,
// and the primitive leaf types. Immutable after parsing; safe to share
// across threads.
class Grammar {
 public:
  Grammar(std::vector<std::string> types, std::vector<Constructor> constructors,
          std::string root_type);

  const std::vector<std::string>& types() const { return types_; }
  const std::vector<Constructor>& constructors() const { return constructors_; }
  const std::string& root_type() const { return root_type_; }

  static const std::vector<std::string>& primitive_types();
  static bool is_primitive(std::string_view type);
  bool is_declared_type(std::string_view type) const;

  const Constructor& constructor(int id) const { return constructors_[id]; }
  int constructor_count() const { return static_cast<int>(constructors_.size()); }

  // -1 when no constructor has that name.
  int constructor_id(std::string_view name) const;

  // Constructors whose result_type is `type`, in declaration order.
  // Primitive types have none; undeclared types are an error.
  const std::vector<int>& constructors_for_type(const std::string& type) const;

  // Dense field-slot numbering for embeddings: slot 0 is the root frontier,
  // then every field of every constructor in declaration order.
  int field_slot(int ctor_id, int field_index) const;
  int field_slot_count() const { return field_slot_count_; }

  bool operator==(const Grammar& other) const {
    return types_ == other.types_ && constructors_ == other.constructors_ &&
           root_type_ == other.root_type_;
  }

 private:
  std::vector<std::string> types_;
  std::vector<Constructor> constructors_;
  std::string root_type_;
  std::unordered_map<std::string, int> ctor_index_;
  std::unordered_map<std::string, std::vector<int>> by_type_;
  std::vector<int> field_slot_base_;
  int field_slot_count_ = 0;
};

// Parses ASDL text: productions of the form
//   type = Ctor(fieldtype name, ...) | Ctor2(...)
// possibly spanning lines; `#` starts a comment. The first production's
// left-hand side becomes the root type.
Grammar parse_asdl(std::string_view text);

// Canonical text form; parse_asdl(print_asdl(g)) == g.
std::string print_asdl(const Grammar& g);

Grammar load_grammar_file(const std::string& path);

}  // namespace jsgen
