#include "jsgen/corpus.hpp"

#include <fstream>

#include <json.hpp>

namespace jsgen {

namespace {

using nlohmann::json;

json example_to_json(const Example& ex) {
  json j;
  j["description"] = ex.description;
  j["code"] = ex.code;
  if (ex.category) j["category"] = *ex.category;
  if (ex.provenance != Provenance::Main) j["provenance"] = provenance_name(ex.provenance);
  if (!ex.literals.empty()) {
    json lits = json::object();
    for (const auto& [placeholder, original] : ex.literals) lits[placeholder] = original;
    j["literals"] = lits;
  }
  return j;
}

Example example_from_json(const json& j, int line_number) {
  if (!j.is_object() || !j.contains("description") || !j.contains("code")) {
    throw DataError("line " + std::to_string(line_number) +
                    ": record needs 'description' and 'code'");
  }
  Example ex;
  ex.description = j.at("description").get<std::string>();
  ex.code = j.at("code").get<std::string>();
  if (j.contains("category")) ex.category = j.at("category").get<std::string>();
  if (j.contains("provenance")) {
    ex.provenance = provenance_from_name(j.at("provenance").get<std::string>());
  }
  if (j.contains("literals")) {
    for (const auto& [placeholder, original] : j.at("literals").items()) {
      ex.literals.emplace_back(placeholder, original.get<std::string>());
    }
  }
  return ex;
}

}  // namespace

std::string example_to_json_line(const Example& ex) { return example_to_json(ex).dump(); }

Example example_from_json_line(const std::string& line, int line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError("line " + std::to_string(line_number) + ": " + e.what());
  }
  return example_from_json(j, line_number);
}

std::vector<Example> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path);
  std::vector<Example> out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    out.push_back(example_from_json_line(line, line_number));
  }
  return out;
}

void save_corpus(const std::vector<Example>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const Example& ex : examples) out << example_to_json_line(ex) << "\n";
}

std::vector<SemanticEntry> load_semantic_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open semantic table: " + path);
  std::vector<SemanticEntry> out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_number) + ": " + e.what());
    }
    if (!j.contains("name") || !j.contains("semantic")) {
      throw DataError("line " + std::to_string(line_number) +
                      ": record needs 'name' and 'semantic'");
    }
    out.push_back({j.at("name").get<std::string>(), j.at("semantic").get<std::string>()});
  }
  return out;
}

void save_semantic_table(const std::vector<SemanticEntry>& entries, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write semantic table: " + path);
  for (const SemanticEntry& e : entries) {
    nlohmann::json j;
    j["name"] = e.name;
    j["semantic"] = e.semantic;
    out << j.dump() << "\n";
  }
}

}  // namespace jsgen
