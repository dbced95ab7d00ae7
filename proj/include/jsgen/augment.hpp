#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsgen/prep.hpp"

namespace jsgen {

// One row of the variable semantic table.
struct SemanticEntry {
  std::string name;      // variable identifier
  std::string semantic;  // natural-language meaning
};

struct CgOptions {
  // The display verb prefixed to the semantic text. Optionally rotated per
  // entry to reduce prefix overfitting; off by default.
  std::vector<std::string> display_verbs = {"展示"};
  bool rotate_verbs = false;
  uint64_t seed = 0;
};

// Rewrites each table entry into a code-generation pair:
// description = verb + semantic, code = {name;}. Entries whose name is not a
// valid identifier are skipped with a warning.
std::vector<Example> build_cg_task(const std::vector<SemanticEntry>& entries,
                                   const CgOptions& options = {},
                                   std::vector<std::string>* warnings = nullptr);

// Variable-name prediction pairs: description = semantic, code = bare name.
// Not parseable as a program; only sequence-level consumers can train on it.
// Duplicates by (name, semantic) are dropped.
std::vector<Example> build_vp_task(const std::vector<SemanticEntry>& entries,
                                   std::vector<std::string>* warnings = nullptr);

enum class AugmentMode { Off, Mix, PretrainPhases };

AugmentMode augment_mode_from_name(std::string_view name);
const char* augment_mode_name(AugmentMode mode);

// Ordered training phases; each phase's pool is reshuffled every epoch.
struct TrainingSchedule {
  struct Phase {
    std::string name;
    std::vector<Example> pool;
    int epochs = 0;
  };
  std::vector<Phase> phases;

  size_t total_examples() const {
    size_t n = 0;
    for (const Phase& p : phases) n += p.pool.size();
    return n;
  }
};

inline constexpr int kDefaultPretrainEpochs = 100;

// Off: main only. Mix: one pooled phase of main+aux (uniform sampling, no
// reweighting). PretrainPhases: aux-only then main-only.
TrainingSchedule merge_tasks(std::vector<Example> main, std::vector<Example> aux,
                             AugmentMode mode, int epochs,
                             int pretrain_epochs = kDefaultPretrainEpochs);

}  // namespace jsgen
