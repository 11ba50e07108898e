#pragma once

// Small line-oriented helpers shared by the text parsers.

#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "khw/error.hpp"

namespace khw::detail {

struct Line {
  int number;
  std::string text;
};

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool starts_with_word(std::string_view s, std::string_view w) {
  s = trim(s);
  if (s.substr(0, w.size()) != w) return false;
  return s.size() == w.size() || s[w.size()] == ' ' || s[w.size()] == '\t' ||
         s[w.size()] == ':';
}

inline int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-empty lines with '#' comments removed.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    auto line = text.substr(pos, nl - pos);
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, std::string(line)});
    pos = nl + 1;
  }
  return out;
}

inline std::pair<std::string, std::string> key_value(const Line& ln) {
  auto colon = ln.text.find(':');
  if (colon == std::string::npos)
    throw ParseError("line " + std::to_string(ln.number) + ": expected 'key: value'");
  std::string_view t(ln.text);
  return {std::string(trim(t.substr(0, colon))), std::string(trim(t.substr(colon + 1)))};
}

// Integers in "X[1,2,3,4]", "1 2 3 4" or "1,2,3,4".
inline std::vector<int> crossing_labels(std::string_view s) {
  s = trim(s);
  if (!s.empty() && (s.front() == 'X' || s.front() == 'x')) {
    s.remove_prefix(1);
    s = trim(s);
    if (s.empty() || s.front() != '[' || s.back() != ']')
      throw ParseError("malformed crossing '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::string buf(s);
  for (auto& ch : buf)
    if (ch == ',') ch = ' ';
  std::vector<int> out;
  for (auto tok : split_ws(buf)) out.push_back(parse_int(tok, "edge label"));
  return out;
}

}  // namespace khw::detail
