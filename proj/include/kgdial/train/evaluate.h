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

#ifndef KGDIAL_TRAIN_EVALUATE_H_
#define KGDIAL_TRAIN_EVALUATE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/models/model.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/kernels.h"

namespace kgdial {

class CandidateScorer {
 public:
  virtual ~CandidateScorer() = default;
  virtual std::string name() const = 0;
  // Scores in candidate order. Must be a pure function of the instance.
  virtual std::vector<ScoredCandidate> Score(
      const EvalInstance &instance) const = 0;
};

class ModelScorer : public CandidateScorer {
 public:
  explicit ModelScorer(const Model &model) : model_(model) {}
  std::string name() const override;
  std::vector<ScoredCandidate> Score(
      const EvalInstance &instance) const override;

 private:
  const Model &model_;
};

// Uniform scores seeded from (seed, instance id).
class RandomScorer : public CandidateScorer {
 public:
  explicit RandomScorer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  std::vector<ScoredCandidate> Score(
      const EvalInstance &instance) const override;

 private:
  std::uint64_t seed_;
};

// Counts candidate tokens that appear as the concept2 of an assertion
// retrieved for the message. Reads the instance's retrieved set.
class AssertionLookupScorer : public CandidateScorer {
 public:
  explicit AssertionLookupScorer(const KnowledgeIndex &index)
      : index_(index) {}
  std::string name() const override { return "assertion_lookup"; }
  std::vector<ScoredCandidate> Score(
      const EvalInstance &instance) const override;

 private:
  const KnowledgeIndex &index_;
};

// 1-based rank of the ground truth under Rank().
std::size_t GroundTruthRank(const std::vector<ScoredCandidate> &scored,
                            std::size_t ground_truth_slot);

struct RecallReport {
  std::size_t instances = 0;
  std::size_t candidates = 0;
  // k -> fraction
  std::map<std::size_t, double> recall;
};

// Ranks every instance once and reports Recall@k for each k. Throws
// std::invalid_argument for an empty instance list, mixed candidate counts
// or k outside [1, K].
RecallReport EvaluateRecall(const CandidateScorer &scorer,
                            const std::vector<EvalInstance> &instances,
                            const std::vector<std::size_t> &ks,
                            Execution execution = Execution::kParallel);
double RecallAtK(const CandidateScorer &scorer,
                 const std::vector<EvalInstance> &instances, std::size_t k,
                 Execution execution = Execution::kParallel);

struct MetricsRecord {
  std::string model;
  std::size_t k = 1;
  double fraction = 0;
  std::size_t instances = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

// One JSON object per line.
std::string ToJsonLine(const MetricsRecord &record);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_EVALUATE_H_
