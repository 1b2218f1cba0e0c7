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

#ifndef KGDIAL_SERVICE_CONFIG_H_
#define KGDIAL_SERVICE_CONFIG_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace kgdial {

inline constexpr char kEnvPrefix[] = "KGDIAL_";

// Flat key=value settings. Later layers override earlier ones: defaults,
// then a config file, then KGDIAL_* environment variables, then flags.
class Settings {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

  void Set(const std::string &key, const std::string &value);
  void SetDefault(const std::string &key, const std::string &value);
  bool Has(const std::string &key) const { return values_.count(key) > 0; }

  std::string GetString(const std::string &key) const;
  std::string GetString(const std::string &key,
                        const std::string &fallback) const;
  std::int64_t GetInt(const std::string &key) const;
  std::uint64_t GetUnsigned(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  bool GetBool(const std::string &key) const;

  // "key = value" lines; '#' starts a comment. Unknown keys are kept.
  void MergeFile(std::istream &in);
  void MergeFile(const std::string &path);
  // For every known key, reads KGDIAL_<KEY> with '-' mapped to '_'.
  void MergeEnv(const EnvLookup &lookup);
  void MergeEnv();

  // Sorted "key=value" lines.
  std::string ToText() const;
  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string EnvName(const std::string &key);

}  // namespace kgdial

#endif  // KGDIAL_SERVICE_CONFIG_H_
