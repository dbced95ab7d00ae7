#include "jsgen/config.hpp"

#include <json.hpp>

#include "jsgen/errors.hpp"
#include "jsgen/manifest.hpp"

namespace jsgen {

namespace {

using nlohmann::json;

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string RunConfig::to_json() const {
  json j;
  j["grammar"] = grammar;
  j["train"] = train_path;
  j["val"] = val_path;
  j["test"] = test_path;
  j["table"] = table_path;
  j["augment"] = augment;
  j["subtokenize"] = subtokenize;
  j["hidden"] = hidden;
  j["embed"] = embed;
  j["batch"] = batch;
  j["epochs"] = epochs;
  j["pretrain_epochs"] = pretrain_epochs;
  j["learning_rate"] = learning_rate;
  j["beam"] = beam;
  j["seed"] = seed;
  j["val_fraction"] = val_fraction;
  return j.dump();
}

void RunConfig::merge_json_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw DataError("malformed config file " + path + ": " + e.what());
  }
  take(j, "grammar", grammar);
  take(j, "train", train_path);
  take(j, "val", val_path);
  take(j, "test", test_path);
  take(j, "table", table_path);
  take(j, "augment", augment);
  take(j, "subtokenize", subtokenize);
  take(j, "hidden", hidden);
  take(j, "embed", embed);
  take(j, "batch", batch);
  take(j, "epochs", epochs);
  take(j, "pretrain_epochs", pretrain_epochs);
  take(j, "learning_rate", learning_rate);
  take(j, "beam", beam);
  take(j, "seed", seed);
  take(j, "val_fraction", val_fraction);
}

}  // namespace jsgen
