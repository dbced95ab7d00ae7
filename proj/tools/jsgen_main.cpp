#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsgen/config.hpp"
#include "jsgen/corpus.hpp"
#include "jsgen/grammar.hpp"
#include "jsgen/jsfront.hpp"
#include "jsgen/manifest.hpp"
#include "jsgen/metrics.hpp"
#include "jsgen/neural/model.hpp"
#include "jsgen/prep.hpp"
#include "jsgen/subtoken.hpp"
#include "jsgen/synth.hpp"
#include "jsgen/transit.hpp"

namespace {

using namespace jsgen;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::filesystem::path sibling(const std::string& path, const std::string& suffix) {
  return std::filesystem::path(path).concat(suffix);
}

int cmd_preprocess(const std::string& in_path, const std::string& out_path,
                   const std::string& report_path) {
  std::vector<Example> records = load_corpus(in_path);
  std::vector<Example> kept;
  std::ostringstream report;
  int line = 0;
  for (Example& ex : records) {
    ++line;
    try {
      std::string canonical = canonicalize_js(ex.code);
      ReplaceResult replaced = replace_string_literals(ex.description, canonical);
      for (const std::string& warning : replaced.warnings) {
        report << "record " << line << ": " << warning << "\n";
      }
      Example out = ex;
      out.description = replaced.description;
      out.code = simplify_member_access(replaced.code);
      for (auto& entry : replaced.literals) out.literals.push_back(std::move(entry));
      kept.push_back(std::move(out));
    } catch (const JsParseError& e) {
      report << "record " << line << ": dropped (" << e.what() << ")\n";
    }
  }
  save_corpus(kept, out_path);
  std::string report_text = report.str();
  if (!report_text.empty()) std::cerr << report_text;
  if (!report_path.empty()) write_text_file(report_path, report_text);

  Manifest manifest;
  manifest.command = "preprocess";
  manifest.add_input(in_path);
  manifest.outputs = {out_path};
  manifest.write(sibling(out_path, ".manifest.json").string());
  std::cout << "preprocess: kept " << kept.size() << "/" << records.size() << " records\n";
  return 0;
}

int cmd_synth(SyntheticSpec spec, const std::string& table_in, const std::string& out_dir) {
  if (!table_in.empty()) spec.table = load_semantic_table(table_in);
  SyntheticCorpus corpus = generate_synthetic(spec);
  std::filesystem::create_directories(out_dir);
  auto out = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
  save_corpus(corpus.train, out("train.jsonl"));
  save_corpus(corpus.val, out("val.jsonl"));
  save_corpus(corpus.test, out("test.jsonl"));
  save_semantic_table(corpus.table, out("table.jsonl"));
  std::ostringstream heldout;
  for (const std::string& name : corpus.heldout_names) heldout << name << "\n";
  write_text_file(out("heldout.txt"), heldout.str());

  Manifest manifest;
  manifest.command = "synth";
  if (!table_in.empty()) manifest.add_input(table_in);
  manifest.outputs = {out("train.jsonl"), out("val.jsonl"), out("test.jsonl"),
                      out("table.jsonl"), out("heldout.txt")};
  manifest.write(out("manifest.json"));
  std::cout << "synth: " << corpus.train.size() << " train, " << corpus.val.size() << " val, "
            << corpus.test.size() << " test, table " << corpus.table.size() << ", held-out "
            << corpus.heldout_names.size() << "\n";
  return 0;
}

int cmd_augment_build(const std::string& table_path, const std::string& task,
                      const std::string& out_path, const std::string& verb, bool rotate,
                      uint64_t seed) {
  std::vector<SemanticEntry> table = load_semantic_table(table_path);
  std::vector<std::string> warnings;
  std::vector<Example> aux;
  if (task == "cg") {
    CgOptions options;
    if (!verb.empty()) options.display_verbs = {verb};
    if (rotate) {
      options.display_verbs = {"展示", "显示", "动态展示"};
      options.rotate_verbs = true;
    }
    options.seed = seed;
    aux = build_cg_task(table, options, &warnings);
  } else if (task == "vp") {
    aux = build_vp_task(table, &warnings);
  } else {
    std::cerr << "unknown task '" << task << "' (expected cg or vp)\n";
    return kExitUsage;
  }
  for (const std::string& w : warnings) std::cerr << w << "\n";
  save_corpus(aux, out_path);

  Manifest manifest;
  manifest.command = "augment build";
  manifest.add_input(table_path);
  manifest.outputs = {out_path};
  manifest.write(sibling(out_path, ".manifest.json").string());
  std::cout << "augment: wrote " << aux.size() << " " << task << " examples\n";
  return 0;
}

// Last `fraction` of a seeded shuffle becomes the validation set.
void split_validation(std::vector<Example>& train, std::vector<Example>& val, double fraction,
                      uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::shuffle(train.begin(), train.end(), rng);
  size_t val_count = static_cast<size_t>(fraction * static_cast<double>(train.size()));
  val.assign(train.end() - static_cast<long>(val_count), train.end());
  train.resize(train.size() - val_count);
}

int cmd_train(const RunConfig& config, const std::string& out_path,
              const std::string& curve_path, bool quiet) {
  Grammar grammar = load_grammar_file(config.grammar);
  std::vector<Example> train_pool = load_corpus(config.train_path);
  std::vector<Example> val_pool;
  if (!config.val_path.empty()) {
    val_pool = load_corpus(config.val_path);
  } else {
    split_validation(train_pool, val_pool, config.val_fraction, config.seed);
  }

  AugmentMode mode = augment_mode_from_name(config.augment);
  std::vector<Example> aux;
  if (mode != AugmentMode::Off) {
    if (config.table_path.empty()) {
      throw DataError("augmentation mode '" + config.augment + "' needs --table");
    }
    std::vector<std::string> warnings;
    aux = build_cg_task(load_semantic_table(config.table_path), {}, &warnings);
    for (const std::string& w : warnings) std::cerr << w << "\n";
  }
  TrainingSchedule schedule =
      merge_tasks(std::move(train_pool), std::move(aux), mode, config.epochs,
                  config.pretrain_epochs);

  std::vector<Example> vocab_pool;
  for (const auto& phase : schedule.phases) {
    vocab_pool.insert(vocab_pool.end(), phase.pool.begin(), phase.pool.end());
  }
  Vocabulary vocab = build_vocab(vocab_pool, grammar, config.subtokenize);

  neural::NetConfig net;
  net.hidden = config.hidden;
  net.embed = config.embed;
  net.seed = config.seed;
  neural::ModelState model = neural::ModelState::init(grammar, std::move(vocab), net);

  neural::TrainOptions options;
  options.batch_size = config.batch;
  options.learning_rate = config.learning_rate;
  options.seed = config.seed;
  options.subtokenize = config.subtokenize;
  options.quiet = quiet;
  neural::TrainResult result = neural::train(model, schedule, val_pool, grammar, options);

  neural::save_checkpoint(model, out_path, config.to_json());
  if (!curve_path.empty()) {
    std::ostringstream csv;
    csv << "epoch,train_nll,val_nll\n";
    for (const auto& row : result.curve) {
      csv << row.epoch << "," << row.train_nll << "," << row.val_nll << "\n";
    }
    write_text_file(curve_path, csv.str());
  }

  Manifest manifest;
  manifest.command = "train";
  manifest.config_json = config.to_json();
  manifest.add_input(config.grammar);
  manifest.add_input(config.train_path);
  if (!config.val_path.empty()) manifest.add_input(config.val_path);
  if (!config.table_path.empty()) manifest.add_input(config.table_path);
  manifest.outputs = {out_path};
  if (!curve_path.empty()) manifest.outputs.push_back(curve_path);
  manifest.write(sibling(out_path, ".manifest.json").string());

  std::cout << "train: best epoch " << result.best_epoch << ", val_nll " << result.best_val_nll
            << ", checkpoint " << out_path << "\n";
  return 0;
}

int cmd_generate(const std::string& checkpoint_path, const std::string& grammar_path,
                 std::string description, int beam_width) {
  Grammar grammar = load_grammar_file(grammar_path);
  neural::ModelState model = neural::load_checkpoint(checkpoint_path);
  neural::check_grammar_compatible(model, grammar);

  auto generate_one = [&](const std::string& text) {
    std::vector<std::string> tokens = tokenize_description(text);
    if (tokens.empty()) {
      std::cerr << "empty description\n";
      return;
    }
    std::vector<neural::Candidate> candidates =
        neural::beam_decode(model, grammar, tokens, beam_width);
    if (candidates.empty()) {
      std::cout << "(generation failed: no legal candidate survived)\n";
      return;
    }
    for (const auto& c : candidates) {
      std::cout << c.score << "\t" << c.code << "\n";
    }
  };

  if (!description.empty()) {
    generate_one(description);
  } else {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (!line.empty()) generate_one(line);
    }
  }
  return 0;
}

int cmd_eval(const std::string& checkpoint_path, const std::string& grammar_path,
             const std::string& test_path, const std::string& predictions_path,
             const std::string& out_path, int beam_width) {
  Grammar grammar = load_grammar_file(grammar_path);
  std::vector<Example> test = load_corpus(test_path);

  std::vector<EvalRecord> records;
  if (!predictions_path.empty()) {
    // Ranked candidate lists, one JSON array or {"candidates": [...]} per line.
    std::ifstream in(predictions_path, std::ios::binary);
    if (!in) throw DataError("cannot open predictions: " + predictions_path);
    std::string line;
    std::vector<std::vector<std::string>> preds;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        throw DataError("predictions line " + std::to_string(line_number) + ": bad JSON");
      }
      if (j.is_object()) j = j.at("candidates");
      preds.push_back(j.get<std::vector<std::string>>());
    }
    if (preds.size() != test.size()) {
      throw DataError("predictions count does not match the test corpus");
    }
    for (size_t i = 0; i < test.size(); ++i) {
      records.push_back({preds[i], test[i].code, test[i].category});
    }
  } else {
    neural::ModelState model = neural::load_checkpoint(checkpoint_path);
    neural::check_grammar_compatible(model, grammar);
    for (const Example& ex : test) {
      std::vector<std::string> tokens = tokenize_description(ex.description);
      std::vector<neural::Candidate> candidates =
          neural::beam_decode(model, grammar, tokens, beam_width);
      EvalRecord record;
      for (const auto& c : candidates) record.candidates.push_back(c.code);
      record.reference = ex.code;
      record.category = ex.category;
      records.push_back(std::move(record));
    }
  }

  EvalReport report = evaluate_corpus(records);
  std::string json_text = report_to_json(report);
  std::cout << report_to_table(report);
  if (!out_path.empty()) {
    write_text_file(out_path, json_text);
    Manifest manifest;
    manifest.command = "eval";
    manifest.add_input(grammar_path);
    manifest.add_input(test_path);
    if (!predictions_path.empty()) manifest.add_input(predictions_path);
    if (!checkpoint_path.empty() && predictions_path.empty()) {
      manifest.add_input(checkpoint_path);
    }
    manifest.outputs = {out_path};
    manifest.write(sibling(out_path, ".manifest.json").string());
  }
  return 0;
}

int cmd_roundtrip(const std::string& in_path, const std::string& grammar_path,
                  bool subtokenize_flag) {
  Grammar grammar = load_grammar_file(grammar_path);
  std::vector<Example> records = load_corpus(in_path);
  int failures = 0;
  int index = 0;
  for (const Example& ex : records) {
    ++index;
    std::string verdict = "pass";
    try {
      std::string canonical = canonicalize_js(ex.code);
      AbstractPtr abstract = to_abstract(parse_js(canonical), grammar);
      std::vector<Action> actions = oracle_actions(abstract, grammar, subtokenize_flag);
      AbstractPtr replayed = replay(actions, grammar);
      std::string printed = print_js(to_concrete(replayed, grammar));
      if (!equal(replayed, abstract) || printed != canonical) verdict = "FAIL (not a fixed point)";
    } catch (const Error& e) {
      verdict = std::string("FAIL (") + e.what() + ")";
    }
    if (verdict != "pass") ++failures;
    std::cout << index << "\t" << verdict << "\t" << ex.code << "\n";
  }
  std::cout << "roundtrip: " << (records.size() - failures) << "/" << records.size()
            << " passed\n";
  return failures == 0 ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar-constrained subtoken-level JavaScript expression generation"};
  app.require_subcommand(1);

  RunConfig config;
  std::string config_file;

  // preprocess
  auto* preprocess = app.add_subcommand("preprocess", "Canonicalize and simplify a corpus");
  std::string pre_in, pre_out, pre_report;
  preprocess->add_option("--in", pre_in, "input JSONL")->required();
  preprocess->add_option("--out", pre_out, "output JSONL")->required();
  preprocess->add_option("--report", pre_report, "dropped-record report path");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  SyntheticSpec spec;
  std::string synth_table, synth_out_dir = "synth";
  synth->add_option("--ste", spec.ste, "string template expressions");
  synth->add_option("--ole", spec.ole, "OR logic expressions");
  synth->add_option("--ce", spec.ce, "condition expressions");
  synth->add_option("--dpe", spec.dpe, "data processing expressions");
  synth->add_option("--table-size", spec.table_size, "semantic table size");
  synth->add_option("--heldout", spec.heldout_count, "held-out identifier count");
  synth->add_option("--val-fraction", spec.val_fraction, "validation fraction");
  synth->add_option("--seed", spec.seed, "random seed");
  synth->add_option("--table", synth_table, "existing semantic table JSONL");
  synth->add_option("--out-dir", synth_out_dir, "output directory");

  // augment build
  auto* augment = app.add_subcommand("augment", "Auxiliary-task data builders");
  augment->require_subcommand(1);
  auto* augment_build = augment->add_subcommand("build", "Build auxiliary training data");
  std::string aug_table, aug_task, aug_out, aug_verb;
  bool aug_rotate = false;
  uint64_t aug_seed = 1;
  augment_build->add_option("--table", aug_table, "semantic table JSONL")->required();
  augment_build->add_option("--task", aug_task, "cg or vp")->required();
  augment_build->add_option("--out", aug_out, "output JSONL")->required();
  augment_build->add_option("--verb", aug_verb, "display verb for the cg rewrite");
  augment_build->add_flag("--rotate-verbs", aug_rotate, "sample display verbs per entry");
  augment_build->add_option("--seed", aug_seed, "random seed");

  auto add_config_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON config file (flags take precedence)");
    cmd->add_option("--grammar", config.grammar, "ASDL grammar path");
    cmd->add_option("--seed", config.seed, "random seed");
  };

  // train
  auto* train = app.add_subcommand("train", "Train a model");
  std::string train_out = "model.ckpt", train_curve;
  bool train_quiet = false;
  add_config_flags(train);
  train->add_option("--train", config.train_path, "training corpus JSONL")->required();
  train->add_option("--val", config.val_path, "validation corpus JSONL");
  train->add_option("--table", config.table_path, "semantic table JSONL");
  train->add_option("--augment", config.augment, "off | mix | pretrain_phases");
  train->add_flag("--no-subtokenize{false}", config.subtokenize,
                  "token-level mode (disable subtokenization)");
  train->add_option("--hidden", config.hidden, "LSTM hidden size");
  train->add_option("--embed", config.embed, "embedding size");
  train->add_option("--batch", config.batch, "batch size");
  train->add_option("--epochs", config.epochs, "training epochs");
  train->add_option("--pretrain-epochs", config.pretrain_epochs, "pretrain phase epochs");
  train->add_option("--lr", config.learning_rate, "Adam learning rate");
  train->add_option("--val-fraction", config.val_fraction, "validation split fraction");
  train->add_option("--out", train_out, "checkpoint output path");
  train->add_option("--curve", train_curve, "loss curve CSV path");
  train->add_flag("--quiet", train_quiet, "suppress progress logging");

  // generate
  auto* generate = app.add_subcommand("generate", "Generate code from a description");
  std::string gen_checkpoint, gen_desc;
  add_config_flags(generate);
  generate->add_option("--checkpoint", gen_checkpoint, "model checkpoint")->required();
  generate->add_option("--desc", gen_desc, "description text (stdin lines otherwise)");
  generate->add_option("--beam", config.beam, "beam width");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate on a test corpus");
  std::string eval_checkpoint, eval_predictions, eval_out;
  add_config_flags(eval);
  eval->add_option("--checkpoint", eval_checkpoint, "model checkpoint");
  eval->add_option("--test", config.test_path, "test corpus JSONL")->required();
  eval->add_option("--predictions", eval_predictions,
                   "ranked candidate lists JSONL (bypasses beam decode)");
  eval->add_option("--out", eval_out, "report JSON path");
  eval->add_option("--beam", config.beam, "beam width");

  // roundtrip
  auto* roundtrip = app.add_subcommand("roundtrip", "Verify the derivation fixed point");
  std::string rt_in;
  bool rt_token_level = false;
  add_config_flags(roundtrip);
  roundtrip->add_option("--in", rt_in, "corpus JSONL")->required();
  roundtrip->add_flag("--token-level", rt_token_level, "disable subtokenization");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) {
      // Precedence: explicit flags > config file > defaults. A flag that was
      // left at its default takes the file's value.
      RunConfig merged;
      merged.merge_json_file(config_file);
      RunConfig defaults;
      auto keep = [&](auto RunConfig::* field) {
        if (config.*field == defaults.*field) config.*field = merged.*field;
      };
      keep(&RunConfig::grammar);
      keep(&RunConfig::train_path);
      keep(&RunConfig::val_path);
      keep(&RunConfig::test_path);
      keep(&RunConfig::table_path);
      keep(&RunConfig::augment);
      keep(&RunConfig::subtokenize);
      keep(&RunConfig::hidden);
      keep(&RunConfig::embed);
      keep(&RunConfig::batch);
      keep(&RunConfig::epochs);
      keep(&RunConfig::pretrain_epochs);
      keep(&RunConfig::learning_rate);
      keep(&RunConfig::beam);
      keep(&RunConfig::seed);
      keep(&RunConfig::val_fraction);
    }

    if (preprocess->parsed()) return cmd_preprocess(pre_in, pre_out, pre_report);
    if (synth->parsed()) return cmd_synth(spec, synth_table, synth_out_dir);
    if (augment->parsed()) {
      return cmd_augment_build(aug_table, aug_task, aug_out, aug_verb, aug_rotate, aug_seed);
    }
    if (train->parsed()) return cmd_train(config, train_out, train_curve, train_quiet);
    if (generate->parsed()) {
      return cmd_generate(gen_checkpoint, config.grammar, gen_desc, config.beam);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_checkpoint, config.grammar, config.test_path, eval_predictions,
                      eval_out, config.beam);
    }
    if (roundtrip->parsed()) return cmd_roundtrip(rt_in, config.grammar, !rt_token_level);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
