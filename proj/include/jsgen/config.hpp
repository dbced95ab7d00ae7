#pragma once

#include <cstdint>
#include <string>

namespace jsgen {

// Run configuration; defaults are the reported training setup (LSTM hidden
// 256, embeddings 128, batch 32, 300 epochs, Adam 1e-3, beam 5). Echoed into
// every checkpoint and report.
struct RunConfig {
  std::string grammar = "data/javascript.asdl";
  std::string train_path;
  std::string val_path;
  std::string test_path;
  std::string table_path;
  std::string augment = "off";  // off | mix | pretrain_phases
  bool subtokenize = true;
  int hidden = 256;
  int embed = 128;
  int batch = 32;
  int epochs = 300;
  int pretrain_epochs = 100;
  double learning_rate = 1e-3;
  int beam = 5;
  uint64_t seed = 1;
  double val_fraction = 0.1;

  std::string to_json() const;
  // Overlays values present in the JSON onto this config.
  void merge_json_file(const std::string& path);
};

}  // namespace jsgen
