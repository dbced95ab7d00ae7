#include <fstream>

#include <json.hpp>

#include "jsgen/neural/model.hpp"

namespace jsgen::neural {

namespace {

using nlohmann::json;

}  // namespace

void save_checkpoint(const ModelState& m, const std::string& path,
                     const std::string& config_echo_json) {
  json j;
  j["format"] = "jsgen-checkpoint";
  j["version"] = kCheckpointVersion;
  j["net"]["hidden"] = m.config.hidden;
  j["net"]["embed"] = m.config.embed;
  j["net"]["seed"] = m.config.seed;
  j["config_echo"] = config_echo_json;
  j["constructor_count"] = m.constructor_count;
  j["field_slot_count"] = m.field_slot_count;
  j["vocab"]["tokens"] = m.vocab.tokens();
  j["vocab"]["constructors"] = m.vocab.constructor_names();
  json params = json::object();
  for (const auto& [name, value] : m.params) {
    json entry;
    entry["rows"] = value.rows();
    entry["cols"] = value.cols();
    std::vector<double> data(value.data(), value.data() + value.size());
    entry["data"] = std::move(data);
    params[name] = std::move(entry);
  }
  j["params"] = std::move(params);

  std::vector<uint8_t> bytes = json::to_msgpack(j);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<long>(bytes.size()));
}

ModelState load_checkpoint(const std::string& path, std::string* config_echo_json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::from_msgpack(bytes);
  } catch (const json::exception& e) {
    throw DataError("malformed checkpoint " + path + ": " + e.what());
  }
  if (j.value("format", "") != "jsgen-checkpoint") {
    throw DataError(path + " is not a checkpoint file");
  }
  if (j.value("version", -1) != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version in " + path);
  }

  ModelState m;
  m.config.hidden = j.at("net").at("hidden").get<int>();
  m.config.embed = j.at("net").at("embed").get<int>();
  m.config.seed = j.at("net").at("seed").get<uint64_t>();
  m.constructor_count = j.at("constructor_count").get<int>();
  m.field_slot_count = j.at("field_slot_count").get<int>();

  auto tokens = j.at("vocab").at("tokens").get<std::vector<std::string>>();
  Vocabulary vocab;
  for (const std::string& tok : tokens) vocab.add(tok);
  if (vocab.tokens() != tokens) {
    throw DataError("checkpoint vocabulary does not start with the reserved symbols");
  }
  vocab.set_constructor_names(
      j.at("vocab").at("constructors").get<std::vector<std::string>>());
  m.vocab = std::move(vocab);

  for (const auto& [name, entry] : j.at("params").items()) {
    long rows = entry.at("rows").get<long>();
    long cols = entry.at("cols").get<long>();
    auto data = entry.at("data").get<std::vector<double>>();
    if (static_cast<long>(data.size()) != rows * cols) {
      throw DataError("checkpoint parameter '" + name + "' has a bad shape header");
    }
    Mat value(rows, cols);
    std::copy(data.begin(), data.end(), value.data());
    m.params[name] = std::move(value);
  }
  if (config_echo_json) *config_echo_json = j.value("config_echo", "");
  return m;
}

void check_grammar_compatible(const ModelState& m, const Grammar& g) {
  if (m.constructor_count != g.constructor_count() ||
      m.field_slot_count != g.field_slot_count()) {
    throw DataError("checkpoint was trained against a different grammar");
  }
  const auto& names = m.vocab.constructor_names();
  for (int i = 0; i < g.constructor_count(); ++i) {
    if (names[i] != g.constructor(i).name) {
      throw DataError("checkpoint constructor table does not match the grammar (" + names[i] +
                      " vs " + g.constructor(i).name + ")");
    }
  }
}

}  // namespace jsgen::neural
