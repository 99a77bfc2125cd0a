// Copyright 2026 The swapgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swapgame/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace swapgame {

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const ConfigEntry& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const ConfigEntry& ConfigSection::require(std::string_view key) const {
  if (const ConfigEntry* e = find(key)) return *e;
  const std::string where = name.empty() ? "top level" : "[" + name + "]";
  throw ConfigError(line, "missing key '" + std::string(key) + "' in " + where);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  doc.sections.push_back(ConfigSection{"", 0, {}});
  int line_no = 0;
  bool saw_content = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos
                                                ? std::string_view::npos
                                                : end - pos);
    ++line_no;
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) continue;
    saw_content = true;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(line_no, "empty section name");
      doc.sections.push_back(ConfigSection{name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    doc.sections.back().entries.push_back(ConfigEntry{key, value, line_no});
  }
  if (!saw_content) throw ConfigError(0, "configuration is empty");
  return doc;
}

const ConfigSection* ConfigDocument::section(std::string_view name) const {
  for (const ConfigSection& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

double parse_double(std::string_view text, int line) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(line, "expected a number, got '" + t + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, int line) {
  const std::string t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(line, "expected an integer, got '" + t + "'");
  }
  return value;
}

double parse_pi_expression(std::string_view text, int line) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') t.push_back(ch);
  }
  if (t.empty()) throw ConfigError(line, "empty numeric expression");

  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) return parse_double(t, line);

  std::string coeff = t.substr(0, pi_pos);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  double factor = 1.0;
  if (coeff == "-") {
    factor = -1.0;
  } else if (!coeff.empty() && coeff != "+") {
    factor = parse_double(coeff, line);
  }
  std::string rest = t.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw ConfigError(line, "cannot parse expression '" + std::string(text) + "'");
    }
    divisor = parse_double(rest.substr(1), line);
    if (divisor == 0.0) throw ConfigError(line, "division by zero");
  }
  return factor * std::numbers::pi / divisor;
}

}  // namespace swapgame
