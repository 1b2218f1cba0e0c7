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

#include "kgdial/models/scorers.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "kgdial/nn/functions.h"

namespace kgdial {

LogitScore ScoreDual(std::span<const double> x, const nn::Array &w,
                     std::span<const double> y) {
  double logit = nn::Bilinear(x, w, y);
  return {logit, nn::Sigmoid(logit)};
}

double AssertionMatch(std::span<const double> a, const nn::Array &w_a,
                      std::span<const double> y) {
  return nn::Bilinear(a, w_a, y);
}

MaxPoolResult MaxPoolMatch(const std::vector<Embedding> &assertions,
                           const nn::Array &w_a, std::span<const double> y) {
  MaxPoolResult result;
  if (assertions.empty()) return result;
  // W_a y is shared by every assertion.
  std::vector<double> way = nn::MatVec(w_a, y);
  for (std::size_t i = 0; i < assertions.size(); ++i) {
    double m = nn::Dot(assertions[i], way);
    if (!result.argmax || m > result.value) {
      result.value = m;
      result.argmax = i;
    }
  }
  return result;
}

KnowledgeScore ScoreTri(std::span<const double> x,
                        const std::vector<Embedding> &assertions,
                        std::span<const double> y, const nn::Array &w,
                        const nn::Array &w_a) {
  LogitScore dual = ScoreDual(x, w, y);
  MaxPoolResult pool = MaxPoolMatch(assertions, w_a, y);
  KnowledgeScore out;
  out.logit = dual.logit + pool.value;
  out.score = nn::Sigmoid(out.logit);
  out.activated = pool.argmax;
  return out;
}

Embedding BagOfWords(const nn::Array &embedding_table,
                     std::span<const int> ids) {
  Embedding bag(embedding_table.cols(), 0.0);
  bool first = true;
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= embedding_table.rows()) {
      throw std::out_of_range("bag of words: token id out of range");
    }
    auto row = embedding_table.row(static_cast<std::size_t>(id));
    for (std::size_t j = 0; j < bag.size(); ++j) {
      bag[j] = first ? row[j] : bag[j] + row[j];
    }
    first = false;
  }
  return bag;
}

double ScoreBow(std::span<const double> x, std::span<const double> y) {
  return nn::Dot(x, y);
}

KnowledgeScore ScoreBowKnowledge(std::span<const double> x,
                                 const std::vector<Embedding> &assertions,
                                 std::span<const double> y) {
  KnowledgeScore out;
  double best = 0.0;
  for (std::size_t i = 0; i < assertions.size(); ++i) {
    double m = nn::Dot(assertions[i], y);
    if (!out.activated || m > best) {
      best = m;
      out.activated = i;
    }
  }
  out.logit = ScoreBow(x, y) + best;
  out.score = out.logit;
  return out;
}

std::vector<double> MemoryAttention(std::span<const double> x,
                                    const std::vector<Embedding> &memory) {
  std::vector<double> logits;
  logits.reserve(memory.size());
  for (const Embedding &a : memory) logits.push_back(nn::Dot(x, a));
  return nn::Softmax(logits);
}

double ScoreMemNet(std::span<const double> x,
                   const std::vector<Embedding> &memory,
                   std::span<const double> y) {
  double score = ScoreBow(x, y);
  if (memory.empty()) return score;
  std::vector<double> p = MemoryAttention(x, memory);
  Embedding o(x.size(), 0.0);
  for (std::size_t i = 0; i < memory.size(); ++i) {
    for (std::size_t j = 0; j < o.size(); ++j) o[j] += memory[i][j] * p[i];
  }
  return score + nn::Dot(o, y);
}

double ScoreTfIdf(std::span<const int> x_ids, std::span<const int> y_ids,
                  std::span<const double> idf) {
  auto weights = [&](std::span<const int> ids) {
    std::map<int, double> tf;
    for (int id : ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= idf.size()) {
        throw std::out_of_range("tf-idf: token id out of range");
      }
      tf[id] += 1.0;
    }
    for (auto &[id, w] : tf) w *= idf[id];
    return tf;
  };
  std::map<int, double> wx = weights(x_ids);
  std::map<int, double> wy = weights(y_ids);
  double dot = 0, nx = 0, ny = 0;
  for (const auto &[id, w] : wx) {
    nx += w * w;
    auto it = wy.find(id);
    if (it != wy.end()) dot += w * it->second;
  }
  for (const auto &[id, w] : wy) ny += w * w;
  if (nx == 0 || ny == 0) return 0.0;
  return dot / (std::sqrt(nx) * std::sqrt(ny));
}

std::vector<double> ComputeIdf(const std::vector<std::vector<int>> &documents,
                               std::size_t vocab_size, int excluded_id) {
  std::vector<std::size_t> df(vocab_size, 0);
  std::vector<std::size_t> last_seen(vocab_size, SIZE_MAX);
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (int id : documents[d]) {
      if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) continue;
      if (last_seen[id] != d) {
        last_seen[id] = d;
        ++df[id];
      }
    }
  }
  const double n = static_cast<double>(documents.size());
  std::vector<double> idf(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    idf[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[i]))) + 1.0;
  }
  if (excluded_id >= 0 && static_cast<std::size_t>(excluded_id) < vocab_size) {
    idf[excluded_id] = 0.0;
  }
  return idf;
}

}  // namespace kgdial
