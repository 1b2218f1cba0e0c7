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

#ifndef KGDIAL_TEXT_VOCABULARY_H_
#define KGDIAL_TEXT_VOCABULARY_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgdial {

inline constexpr std::string_view kUnknownToken = "⟨unk⟩";

// A tokenized utterance and its ids; the two lists always have equal length.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<int> ids;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

class Vocabulary {
 public:
  Vocabulary() = default;

  // Tokens with frequency >= min_freq get ids in descending-frequency order
  // (ties alphabetical), then the unknown token, then every relation symbol
  // not already present.
  static Vocabulary Build(const std::vector<std::vector<std::string>> &corpus,
                          int min_freq,
                          const std::vector<std::string> &relations);

  int size() const { return static_cast<int>(id_to_token_.size()); }
  int unk_id() const { return unk_id_; }
  int min_freq() const { return min_freq_; }
  const std::vector<std::string> &relations() const { return relations_; }

  bool Contains(std::string_view token) const;
  std::optional<int> Find(std::string_view token) const;
  // Id of the token, or unk_id() when absent.
  int IdOf(std::string_view token) const;
  const std::string &TokenOf(int id) const;

  TokenSequence Encode(const std::vector<std::string> &tokens) const;
  std::vector<std::string> Decode(const std::vector<int> &ids) const;

  // Stable 64-bit fingerprint of the id assignment.
  std::uint64_t Fingerprint() const;

  // Text format: a header line
  //   "#kgdial-vocab v1 min_freq=<n> unk=<id> size=<n> relations=<a,b,...>"
  // followed by one token per line in id order.
  void Save(std::ostream &out) const;
  static Vocabulary Load(std::istream &in);
  void SaveFile(const std::string &path) const;
  static Vocabulary LoadFile(const std::string &path);

  bool operator==(const Vocabulary &other) const {
    return id_to_token_ == other.id_to_token_ && unk_id_ == other.unk_id_ &&
           min_freq_ == other.min_freq_ && relations_ == other.relations_;
  }

 private:
  void AddToken(const std::string &token);

  std::unordered_map<std::string, int> token_to_id_;
  std::vector<std::string> id_to_token_;
  std::vector<std::string> relations_;
  int unk_id_ = -1;
  int min_freq_ = 1;
};

}  // namespace kgdial

#endif  // KGDIAL_TEXT_VOCABULARY_H_
