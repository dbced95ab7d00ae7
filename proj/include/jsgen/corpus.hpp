#pragma once

#include <string>
#include <vector>

#include "jsgen/augment.hpp"
#include "jsgen/prep.hpp"

namespace jsgen {

// JSON Lines corpus I/O. One record per line with keys `description`, `code`,
// optional `category`, `provenance`, and `literals` (placeholder map).
std::vector<Example> load_corpus(const std::string& path);
void save_corpus(const std::vector<Example>& examples, const std::string& path);

std::string example_to_json_line(const Example& ex);
Example example_from_json_line(const std::string& line, int line_number);

// Semantic table: JSON Lines with keys `name`, `semantic`.
std::vector<SemanticEntry> load_semantic_table(const std::string& path);
void save_semantic_table(const std::vector<SemanticEntry>& entries, const std::string& path);

}  // namespace jsgen
