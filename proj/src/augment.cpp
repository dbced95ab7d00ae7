#include "jsgen/augment.hpp"

#include <random>
#include <set>

#include "jsgen/jsfront.hpp"

namespace jsgen {

std::vector<Example> build_cg_task(const std::vector<SemanticEntry>& entries,
                                   const CgOptions& options,
                                   std::vector<std::string>* warnings) {
  std::vector<Example> out;
  std::mt19937_64 rng(options.seed);
  for (const SemanticEntry& entry : entries) {
    if (!is_valid_js_identifier(entry.name) || entry.semantic.empty()) {
      if (warnings) warnings->push_back("skipped semantic-table entry '" + entry.name + "'");
      continue;
    }
    size_t verb_index = 0;
    if (options.rotate_verbs && options.display_verbs.size() > 1) {
      verb_index = rng() % options.display_verbs.size();
    }
    Example ex;
    ex.description = options.display_verbs[verb_index] + entry.semantic;
    ex.code = "{" + entry.name + ";}";
    ex.provenance = Provenance::AuxCg;
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<Example> build_vp_task(const std::vector<SemanticEntry>& entries,
                                   std::vector<std::string>* warnings) {
  std::vector<Example> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const SemanticEntry& entry : entries) {
    if (!is_valid_js_identifier(entry.name) || entry.semantic.empty()) {
      if (warnings) warnings->push_back("skipped semantic-table entry '" + entry.name + "'");
      continue;
    }
    if (!seen.insert({entry.name, entry.semantic}).second) continue;
    Example ex;
    ex.description = entry.semantic;
    ex.code = entry.name;
    ex.provenance = Provenance::AuxVp;
    out.push_back(std::move(ex));
  }
  return out;
}

AugmentMode augment_mode_from_name(std::string_view name) {
  if (name == "off") return AugmentMode::Off;
  if (name == "mix") return AugmentMode::Mix;
  if (name == "pretrain_phases") return AugmentMode::PretrainPhases;
  throw DataError("unknown augmentation mode '" + std::string(name) + "'");
}

const char* augment_mode_name(AugmentMode mode) {
  switch (mode) {
    case AugmentMode::Off: return "off";
    case AugmentMode::Mix: return "mix";
    case AugmentMode::PretrainPhases: return "pretrain_phases";
  }
  return "off";
}

TrainingSchedule merge_tasks(std::vector<Example> main, std::vector<Example> aux,
                             AugmentMode mode, int epochs, int pretrain_epochs) {
  TrainingSchedule schedule;
  switch (mode) {
    case AugmentMode::Off:
      schedule.phases.push_back({"main", std::move(main), epochs});
      break;
    case AugmentMode::Mix: {
      TrainingSchedule::Phase phase{"mix", std::move(main), epochs};
      phase.pool.insert(phase.pool.end(), std::make_move_iterator(aux.begin()),
                        std::make_move_iterator(aux.end()));
      schedule.phases.push_back(std::move(phase));
      break;
    }
    case AugmentMode::PretrainPhases:
      schedule.phases.push_back({"pretrain", std::move(aux), pretrain_epochs});
      schedule.phases.push_back({"finetune", std::move(main), epochs});
      break;
  }
  return schedule;
}

}  // namespace jsgen
