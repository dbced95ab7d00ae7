#include "jsgen/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jsgen/errors.hpp"

namespace jsgen {

uint64_t fnv1a(std::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

uint64_t fnv1a_file(const std::string& path) { return fnv1a(read_text_file(path)); }

std::string hex64(uint64_t value) {
  static const char* kDigits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out.write(content.data(), static_cast<long>(content.size()));
}

void Manifest::add_input(const std::string& path) {
  input_digests.emplace_back(path, hex64(fnv1a_file(path)));
}

std::string Manifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "jsgen";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config_json.empty() ? nlohmann::json::object()
                                    : nlohmann::json::parse(config_json);
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [path, digest] : input_digests) inputs[path] = digest;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  return j.dump(2);
}

void Manifest::write(const std::string& path) const { write_text_file(path, to_json()); }

}  // namespace jsgen
