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

#ifndef KGDIAL_MODELS_SCORERS_H_
#define KGDIAL_MODELS_SCORERS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kgdial/nn/array.h"

namespace kgdial {

using Embedding = std::vector<double>;

// A compatibility score with the value it is ranked by. For the sigmoid
// models `logit` is the pre-sigmoid argument; for raw scorers it equals
// `score`.
struct LogitScore {
  double logit = 0;
  double score = 0;
};

struct MaxPoolResult {
  double value = 0;
  // Position of the best-matching assertion; empty when there is none.
  std::optional<std::size_t> argmax;
};

struct KnowledgeScore {
  double logit = 0;
  double score = 0;
  std::optional<std::size_t> activated;
};

// sigma(x^T W y).
LogitScore ScoreDual(std::span<const double> x, const nn::Array &w,
                     std::span<const double> y);

// a^T W_a y; no sigmoid.
double AssertionMatch(std::span<const double> a, const nn::Array &w_a,
                      std::span<const double> y);

// max over assertions of AssertionMatch, ties to the lowest position.
// An empty list yields value 0 and no argmax.
MaxPoolResult MaxPoolMatch(const std::vector<Embedding> &assertions,
                           const nn::Array &w_a, std::span<const double> y);

// sigma(x^T W y + max_a a^T W_a y); reduces to ScoreDual for no assertions.
KnowledgeScore ScoreTri(std::span<const double> x,
                        const std::vector<Embedding> &assertions,
                        std::span<const double> y, const nn::Array &w,
                        const nn::Array &w_a);

// Sum of embedding-table rows; the zero vector for no ids.
Embedding BagOfWords(const nn::Array &embedding_table, std::span<const int> ids);

// x^T y.
double ScoreBow(std::span<const double> x, std::span<const double> y);

// x^T y + max_a a^T y; an empty list adds nothing.
KnowledgeScore ScoreBowKnowledge(std::span<const double> x,
                                 const std::vector<Embedding> &assertions,
                                 std::span<const double> y);

// Attention weights softmax(x^T a_i) over the memory.
std::vector<double> MemoryAttention(std::span<const double> x,
                                    const std::vector<Embedding> &memory);

// x^T y + o^T y with o = sum_i p_i a_i and p = MemoryAttention(x, memory).
// An empty memory gives o = 0.
double ScoreMemNet(std::span<const double> x,
                   const std::vector<Embedding> &memory,
                   std::span<const double> y);

// Cosine similarity of tf*idf vectors over token ids. Zero when either side
// has no weighted term.
double ScoreTfIdf(std::span<const int> x_ids, std::span<const int> y_ids,
                  std::span<const double> idf);

// Smoothed inverse document frequency log((1 + N) / (1 + df)) + 1 over
// `documents`, zeroing `excluded_id` (the unknown token) when >= 0.
std::vector<double> ComputeIdf(const std::vector<std::vector<int>> &documents,
                               std::size_t vocab_size, int excluded_id);

}  // namespace kgdial

#endif  // KGDIAL_MODELS_SCORERS_H_
