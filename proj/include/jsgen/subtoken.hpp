#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jsgen {

// Sentinels of the subtoken protocol. `<EOT>` closes an identifier or plain
// literal run; `<SOS>`/`<EOS>` bracket a string-literal value's run.
inline constexpr const char* kEot = "<EOT>";
inline constexpr const char* kSos = "<SOS>";
inline constexpr const char* kEos = "<EOS>";
inline constexpr const char* kUnk = "<unk>";
inline constexpr const char* kPad = "<pad>";

// Rule-based identifier splitting: camel case at case boundaries, snake case
// at underscores. Continuation pieces carry a `##` prefix.
//   liveTimeDesc -> [live, ##Time, ##Desc]
//   picURLPath   -> [pic, ##URL, ##Path]
//   a_b          -> [a, ##b]
std::vector<std::string> subtokenize(std::string_view identifier);

// Inverse of subtokenize: strips `##`, concatenates, restoring an underscore
// before continuations that do not start with an uppercase letter.
std::string join_subtokens(const std::vector<std::string>& pieces);

// String-literal content segmentation for GenSubtoken runs: alternating
// maximal runs of non-space and space characters, so concatenation is the
// exact inverse. An empty string has no segments.
std::vector<std::string> split_string_segments(std::string_view text);

bool is_sentinel(std::string_view token);

// Minimal UTF-8 iteration used by the description tokenizer and
// character-level edit distance.
std::vector<uint32_t> utf8_decode(std::string_view text);
std::string utf8_encode(uint32_t codepoint);
size_t utf8_sequence_length(unsigned char lead);

}  // namespace jsgen
