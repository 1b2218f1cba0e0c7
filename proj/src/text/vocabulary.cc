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

#include "kgdial/text/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

std::string JoinComma(const std::vector<std::string> &items) {
  std::string out;
  for (const std::string &s : items) {
    if (!out.empty()) out.push_back(',');
    out += s;
  }
  return out;
}

std::vector<std::string> SplitComma(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) out.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

void Vocabulary::AddToken(const std::string &token) {
  token_to_id_.emplace(token, static_cast<int>(id_to_token_.size()));
  id_to_token_.push_back(token);
}

Vocabulary Vocabulary::Build(
    const std::vector<std::vector<std::string>> &corpus, int min_freq,
    const std::vector<std::string> &relations) {
  if (min_freq < 1) throw std::invalid_argument("min_freq must be >= 1");
  std::map<std::string, std::int64_t> counts;
  for (const auto &sentence : corpus) {
    for (const std::string &token : sentence) ++counts[token];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto &[token, count] : counts) {
    if (count >= min_freq && token != kUnknownToken) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
    return a.second > b.second;
  });

  Vocabulary vocab;
  vocab.min_freq_ = min_freq;
  for (const auto &[token, count] : kept) vocab.AddToken(token);
  vocab.unk_id_ = vocab.size();
  vocab.AddToken(std::string(kUnknownToken));
  for (const std::string &relation : relations) {
    if (!vocab.Contains(relation)) vocab.AddToken(relation);
    if (std::find(vocab.relations_.begin(), vocab.relations_.end(),
                  relation) == vocab.relations_.end()) {
      vocab.relations_.push_back(relation);
    }
  }
  return vocab;
}

bool Vocabulary::Contains(std::string_view token) const {
  return token_to_id_.find(std::string(token)) != token_to_id_.end();
}

std::optional<int> Vocabulary::Find(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::IdOf(std::string_view token) const {
  return Find(token).value_or(unk_id_);
}

const std::string &Vocabulary::TokenOf(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("token id out of range");
  return id_to_token_[id];
}

TokenSequence Vocabulary::Encode(const std::vector<std::string> &tokens) const {
  TokenSequence seq;
  seq.tokens = tokens;
  seq.ids.reserve(tokens.size());
  for (const std::string &t : tokens) seq.ids.push_back(IdOf(t));
  return seq;
}

std::vector<std::string> Vocabulary::Decode(const std::vector<int> &ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(TokenOf(id));
  return out;
}

std::uint64_t Vocabulary::Fingerprint() const {
  Fnv1a hash;
  for (const std::string &t : id_to_token_) {
    hash.Update(t);
    hash.Update(std::string_view("\n"));
  }
  hash.Update(std::to_string(unk_id_));
  return hash.value();
}

void Vocabulary::Save(std::ostream &out) const {
  out << "#kgdial-vocab v1 min_freq=" << min_freq_ << " unk=" << unk_id_
      << " size=" << size() << " relations=" << JoinComma(relations_) << '\n';
  for (const std::string &t : id_to_token_) out << t << '\n';
}

Vocabulary Vocabulary::Load(std::istream &in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("#kgdial-vocab v1", 0) != 0) {
    throw std::runtime_error("vocabulary: missing or unsupported header");
  }
  Vocabulary vocab;
  int size = -1;
  std::istringstream fields(header.substr(16));
  std::string field;
  while (fields >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    std::string key = field.substr(0, eq);
    std::string value = field.substr(eq + 1);
    if (key == "min_freq") vocab.min_freq_ = std::stoi(value);
    if (key == "unk") vocab.unk_id_ = std::stoi(value);
    if (key == "size") size = std::stoi(value);
    if (key == "relations") vocab.relations_ = SplitComma(value);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (vocab.Contains(line)) {
      throw std::runtime_error("vocabulary: duplicate token '" + line + "'");
    }
    vocab.AddToken(line);
  }
  if (size != vocab.size()) {
    throw std::runtime_error("vocabulary: size mismatch (header " +
                             std::to_string(size) + ", file " +
                             std::to_string(vocab.size()) + ")");
  }
  if (vocab.unk_id_ < 0 || vocab.unk_id_ >= vocab.size() ||
      vocab.id_to_token_[vocab.unk_id_] != kUnknownToken) {
    throw std::runtime_error("vocabulary: invalid unk index");
  }
  for (const std::string &r : vocab.relations_) {
    if (!vocab.Contains(r)) {
      throw std::runtime_error("vocabulary: relation '" + r + "' has no id");
    }
  }
  return vocab;
}

void Vocabulary::SaveFile(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
  Save(out);
}

Vocabulary Vocabulary::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary: " + path);
  return Load(in);
}

}  // namespace kgdial
