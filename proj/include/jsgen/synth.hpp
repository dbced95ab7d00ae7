#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsgen/augment.hpp"
#include "jsgen/prep.hpp"

namespace jsgen {

// Desk-scale synthetic corpus: category templates instantiated with
// identifiers from a semantic table. A held-out subset of the table appears
// only in the test split (and in the table itself), never in train/val.
struct SyntheticSpec {
  int ste = 0;
  int ole = 0;
  int ce = 0;
  int dpe = 0;
  int table_size = 500;    // used when no table is supplied
  int heldout_count = 50;  // identifiers reserved for the test split
  double val_fraction = 0.1;
  uint64_t seed = 1;
  std::vector<SemanticEntry> table;  // optional; built-in inventory otherwise
};

struct SyntheticCorpus {
  std::vector<Example> train;
  std::vector<Example> val;
  std::vector<Example> test;  // category-tagged, held-out identifiers
  std::vector<SemanticEntry> table;
  std::vector<std::string> heldout_names;
};

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

// Compositional name/semantic pairs (two-piece camel-case names, Chinese
// semantics); `rare_first` entries draw their leading piece from an inventory
// reserved for held-out identifiers.
std::vector<SemanticEntry> builtin_semantic_table(int common_count, int rare_count,
                                                  uint64_t seed);

}  // namespace jsgen
