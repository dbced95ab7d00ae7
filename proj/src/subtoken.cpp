#include "jsgen/subtoken.hpp"

namespace jsgen {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower_or_digit(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

// Splits one underscore-free segment at camel-case boundaries: before an
// uppercase that follows a lowercase/digit, and before the last uppercase of
// an acronym run followed by a lowercase (picURLPath -> pic URL Path).
void camel_split(std::string_view segment, std::vector<std::string>& out) {
  size_t start = 0;
  for (size_t i = 1; i < segment.size(); ++i) {
    bool boundary = false;
    if (is_upper(segment[i]) && is_lower_or_digit(segment[i - 1])) {
      boundary = true;
    } else if (is_upper(segment[i - 1]) && is_upper(segment[i]) && i + 1 < segment.size() &&
               segment[i + 1] >= 'a' && segment[i + 1] <= 'z') {
      boundary = true;
    }
    if (boundary) {
      out.emplace_back(segment.substr(start, i - start));
      start = i;
    }
  }
  if (start < segment.size()) out.emplace_back(segment.substr(start));
}

}  // namespace

std::vector<std::string> subtokenize(std::string_view identifier) {
  std::vector<std::string> pieces;
  size_t start = 0;
  for (size_t i = 0; i <= identifier.size(); ++i) {
    if (i == identifier.size() || identifier[i] == '_') {
      if (i > start) camel_split(identifier.substr(start, i - start), pieces);
      start = i + 1;
    }
  }
  for (size_t i = 1; i < pieces.size(); ++i) pieces[i] = "##" + pieces[i];
  return pieces;
}

std::string join_subtokens(const std::vector<std::string>& pieces) {
  std::string out;
  for (size_t i = 0; i < pieces.size(); ++i) {
    std::string_view piece = pieces[i];
    if (piece.substr(0, 2) == "##") piece.remove_prefix(2);
    if (i > 0 && !(piece.size() > 0 && is_upper(piece[0]))) out += '_';
    out += piece;
  }
  return out;
}

std::vector<std::string> split_string_segments(std::string_view text) {
  std::vector<std::string> segments;
  size_t start = 0;
  while (start < text.size()) {
    bool space_run = text[start] == ' ';
    size_t end = start;
    while (end < text.size() && (text[end] == ' ') == space_run) ++end;
    segments.emplace_back(text.substr(start, end - start));
    start = end;
  }
  return segments;
}

bool is_sentinel(std::string_view token) {
  return token == kEot || token == kSos || token == kEos;
}

size_t utf8_sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // invalid byte: treat as a unit
}

std::vector<uint32_t> utf8_decode(std::string_view text) {
  std::vector<uint32_t> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char lead = static_cast<unsigned char>(text[i]);
    size_t len = utf8_sequence_length(lead);
    if (i + len > text.size()) len = 1;
    uint32_t cp = 0;
    switch (len) {
      case 1: cp = lead; break;
      case 2: cp = lead & 0x1F; break;
      case 3: cp = lead & 0x0F; break;
      case 4: cp = lead & 0x07; break;
    }
    for (size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string utf8_encode(uint32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

}  // namespace jsgen
