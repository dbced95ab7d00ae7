#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jsgen {

inline constexpr const char* kToolVersion = "0.1.0";

uint64_t fnv1a(std::string_view bytes);
uint64_t fnv1a_file(const std::string& path);
std::string hex64(uint64_t value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// Every CLI run records its command, config echo, seed, and input digests so
// equal manifests imply byte-identical outputs.
struct Manifest {
  std::string command;
  std::string config_json;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path -> hex digest
  std::vector<std::string> outputs;

  void add_input(const std::string& path);
  std::string to_json() const;
  void write(const std::string& path) const;
};

}  // namespace jsgen
