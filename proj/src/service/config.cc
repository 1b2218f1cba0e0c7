// Copyright 2026 The kgdial Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgdial/service/config.h"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace kgdial {

namespace {

std::string Trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("setting " + key + ": not a number: " + text);
  }
  return value;
}

}  // namespace

std::string EnvName(const std::string &key) {
  std::string name = kEnvPrefix;
  for (char c : key) {
    name.push_back(c == '-' ? '_'
                            : static_cast<char>(std::toupper(
                                  static_cast<unsigned char>(c))));
  }
  return name;
}

void Settings::Set(const std::string &key, const std::string &value) {
  values_[key] = value;
}

void Settings::SetDefault(const std::string &key, const std::string &value) {
  values_.emplace(key, value);
}

std::string Settings::GetString(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw std::invalid_argument("missing required setting --" + key);
  }
  return it->second;
}

std::string Settings::GetString(const std::string &key,
                                const std::string &fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::int64_t Settings::GetInt(const std::string &key) const {
  return ParseNumber<std::int64_t>(key, GetString(key));
}

std::uint64_t Settings::GetUnsigned(const std::string &key) const {
  return ParseNumber<std::uint64_t>(key, GetString(key));
}

double Settings::GetDouble(const std::string &key) const {
  return ParseNumber<double>(key, GetString(key));
}

bool Settings::GetBool(const std::string &key) const {
  std::string v = GetString(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("setting " + key + ": not a boolean: " + v);
}

void Settings::MergeFile(std::istream &in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": empty key");
    }
    values_[key] = Trim(line.substr(eq + 1));
  }
}

void Settings::MergeFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  MergeFile(in);
}

void Settings::MergeEnv(const EnvLookup &lookup) {
  for (auto &[key, value] : values_) {
    if (auto v = lookup(EnvName(key))) value = *v;
  }
}

void Settings::MergeEnv() {
  MergeEnv([](const std::string &name) -> std::optional<std::string> {
    const char *v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  });
}

std::string Settings::ToText() const {
  std::string out;
  for (const auto &[k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

}  // namespace kgdial
