#pragma once

// Small helpers for the line-based configuration formats.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace qprot {

inline std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view s) { return split(s, '\n'); }

// Drops a trailing "# ..." or "// ..." comment.
inline std::string_view strip_comment(std::string_view s) {
  auto h = s.find('#');
  auto d = s.find("//");
  return s.substr(0, std::min(h, d));
}

// Lattice element and level names: identifiers that may also contain '-'.
inline bool is_element_name(std::string_view s) {
  if (s.empty()) return false;
  char f = s.front();
  if (!((f >= 'a' && f <= 'z') || (f >= 'A' && f <= 'Z') || f == '_')) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
          c == '\''))
      return false;
  return true;
}

}  // namespace qprot
