#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jsgen/augment.hpp"
#include "jsgen/jsfront.hpp"
#include "jsgen/metrics.hpp"
#include "jsgen/synth.hpp"
#include "jsgen/transit.hpp"
#include "testutil.hpp"

using namespace jsgen;

TEST_CASE("cg rewrite of table entries") {
  std::vector<SemanticEntry> entries = {{"picUrl", "图片链接"}, {"shopLogo", "店铺标志"}};
  std::vector<Example> aux = build_cg_task(entries);
  REQUIRE(aux.size() == 2);
  CHECK(aux[0].description == "展示图片链接");
  CHECK(aux[0].code == "{picUrl;}");
  CHECK(aux[0].provenance == Provenance::AuxCg);
  CHECK(aux[1].description == "展示店铺标志");
  CHECK(aux[1].code == "{shopLogo;}");

  CHECK(build_cg_task({}).empty());
}

TEST_CASE("invalid identifiers are skipped with a warning") {
  std::vector<std::string> warnings;
  std::vector<Example> aux =
      build_cg_task({{"not an identifier", "语义"}, {"okName", "语义"}}, {}, &warnings);
  REQUIRE(aux.size() == 1);
  CHECK(aux[0].code == "{okName;}");
  CHECK(warnings.size() == 1);
}

TEST_CASE("vp pairs and deduplication") {
  std::vector<SemanticEntry> entries = {
      {"roomStatus", "直播状态"}, {"picUrl", "图片链接"}, {"roomStatus", "直播状态"}};
  std::vector<Example> aux = build_vp_task(entries);
  REQUIRE(aux.size() == 2);
  CHECK(aux[0].description == "直播状态");
  CHECK(aux[0].code == "roomStatus");
  CHECK(aux[0].provenance == Provenance::AuxVp);
  CHECK(aux[1].description == "图片链接");
  CHECK(aux[1].code == "picUrl");
}

TEST_CASE("every cg example parses and survives the oracle round trip") {
  const Grammar& g = testutil::js_grammar();
  std::vector<SemanticEntry> table = builtin_semantic_table(200, 20, 7);
  std::vector<Example> aux = build_cg_task(table);
  CHECK(aux.size() == table.size());
  for (const Example& ex : aux) {
    ConcretePtr tree = parse_js(ex.code);
    AbstractPtr abstract = to_abstract(tree, g);
    AbstractPtr replayed = replay(oracle_actions(abstract, g, true), g);
    CHECK(equal(replayed, abstract));
    // Exactly one identifier, equal to the entry name.
    std::vector<std::string> ids = extract_identifiers(ex.code);
    REQUIRE(ids.size() == 1);
    CHECK(ex.code == "{" + ids[0] + ";}");
  }
}

TEST_CASE("merge_tasks mix preserves the multiset union") {
  std::vector<Example> main(3), aux(5);
  for (size_t i = 0; i < main.size(); ++i) main[i].code = "main" + std::to_string(i);
  for (size_t i = 0; i < aux.size(); ++i) aux[i].code = "aux" + std::to_string(i);
  TrainingSchedule mix = merge_tasks(main, aux, AugmentMode::Mix, 10);
  REQUIRE(mix.phases.size() == 1);
  CHECK(mix.phases[0].pool.size() == 8);
  CHECK(mix.phases[0].epochs == 10);
  // No example is mutated by merging.
  int main_seen = 0, aux_seen = 0;
  for (const Example& ex : mix.phases[0].pool) {
    if (ex.code.rfind("main", 0) == 0) ++main_seen;
    if (ex.code.rfind("aux", 0) == 0) ++aux_seen;
  }
  CHECK(main_seen == 3);
  CHECK(aux_seen == 5);
}

TEST_CASE("merge_tasks with empty aux equals main-only") {
  std::vector<Example> main(4);
  TrainingSchedule mix = merge_tasks(main, {}, AugmentMode::Mix, 7);
  REQUIRE(mix.phases.size() == 1);
  CHECK(mix.phases[0].pool.size() == 4);
  TrainingSchedule off = merge_tasks(main, {}, AugmentMode::Off, 7);
  CHECK(off.phases[0].pool.size() == mix.phases[0].pool.size());
}

TEST_CASE("pretrain_phases ordering and epoch defaults") {
  std::vector<Example> main(2), aux(3);
  TrainingSchedule schedule = merge_tasks(main, aux, AugmentMode::PretrainPhases, 300);
  REQUIRE(schedule.phases.size() == 2);
  CHECK(schedule.phases[0].name == "pretrain");
  CHECK(schedule.phases[0].pool.size() == 3);
  CHECK(schedule.phases[0].epochs == kDefaultPretrainEpochs);
  CHECK(schedule.phases[1].name == "finetune");
  CHECK(schedule.phases[1].pool.size() == 2);
  CHECK(schedule.phases[1].epochs == 300);
}

TEST_CASE("synthetic corpus invariants") {
  SyntheticSpec spec;
  spec.ste = 20;
  spec.ole = 20;
  spec.ce = 10;
  spec.dpe = 4;
  spec.table_size = 120;
  spec.heldout_count = 12;
  spec.seed = 99;
  SyntheticCorpus corpus = generate_synthetic(spec);
  CHECK(corpus.table.size() == 120);
  CHECK(corpus.heldout_names.size() == 12);
  CHECK(corpus.train.size() + corpus.val.size() == 54);
  CHECK(corpus.test.size() == 12);

  const Grammar& g = testutil::js_grammar();
  for (const auto* split : {&corpus.train, &corpus.val, &corpus.test}) {
    for (const Example& ex : *split) {
      AbstractPtr abstract = to_abstract(parse_js(ex.code), g);
      CHECK(equal(replay(oracle_actions(abstract, g, true), g), abstract));
    }
  }
  // Held-out identifiers never appear in train or val.
  for (const std::string& name : corpus.heldout_names) {
    for (const auto* split : {&corpus.train, &corpus.val}) {
      for (const Example& ex : *split) {
        for (const std::string& id : extract_identifiers(ex.code)) CHECK(id != name);
      }
    }
  }
  // Test examples are category-tagged; train examples are not.
  for (const Example& ex : corpus.test) CHECK(ex.category.has_value());
  for (const Example& ex : corpus.train) CHECK_FALSE(ex.category.has_value());

  // Determinism.
  SyntheticCorpus again = generate_synthetic(spec);
  REQUIRE(again.train.size() == corpus.train.size());
  for (size_t i = 0; i < corpus.train.size(); ++i) {
    CHECK(again.train[i].code == corpus.train[i].code);
    CHECK(again.train[i].description == corpus.train[i].description);
  }
}

TEST_CASE("ole template instance matches the expected shape") {
  SyntheticSpec spec;
  spec.ole = 3;
  spec.table_size = 60;
  spec.heldout_count = 5;
  spec.seed = 3;
  SyntheticCorpus corpus = generate_synthetic(spec);
  bool saw_blank = false, saw_default = false;
  std::vector<Example> all = corpus.train;
  all.insert(all.end(), corpus.val.begin(), corpus.val.end());
  for (const Example& ex : all) {
    if (ex.code.find("|| ' '") != std::string::npos) saw_blank = true;
    if (ex.code.find("|| '<STR1>'") != std::string::npos) saw_default = true;
  }
  CHECK(saw_blank);
  CHECK(saw_default);
}
