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

// Minimal sectioned key-value format shared by every fixture:
//
//   # comment (also after a value)
//   key = value            <- keys before the first section live in ""
//   [section name]
//   key = value
//
// Keys may repeat; order is preserved. Errors carry 1-based line numbers.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swapgame {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
  const ConfigEntry& require(std::string_view key) const;
};

struct ConfigDocument {
  std::vector<ConfigSection> sections;

  static ConfigDocument parse(std::string_view text);

  /// First section with this exact name, or nullptr.
  const ConfigSection* section(std::string_view name) const;
  /// Top-level (unsectioned) keys.
  const ConfigSection& globals() const { return sections.front(); }
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::string trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Plain decimal number; ConfigError(line) otherwise.
double parse_double(std::string_view text, int line);
long long parse_integer(std::string_view text, int line);

/// Real number that may be written with pi: "0", "pi", "-pi/2", "2pi/3",
/// "4*pi/3", "0.25*pi", "1.5".
double parse_pi_expression(std::string_view text, int line);

}  // namespace swapgame
