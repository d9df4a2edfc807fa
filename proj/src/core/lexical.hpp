#pragma once

#include <array>
#include <string_view>

namespace qprot {

inline constexpr std::array<std::string_view, 8> kKeywords = {"new",  "case", "of",     "some",
                                                             "else", "end",  "forall", "exists"};

inline bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

// [a-zA-Z_][a-zA-Z0-9_']*
inline bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

inline bool is_keyword(std::string_view s) {
  for (auto k : kKeywords)
    if (k == s) return true;
  return false;
}

}  // namespace qprot
