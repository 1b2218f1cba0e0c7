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

#include "kgdial/train/evaluate.h"

#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "kgdial/util/hash.h"

namespace kgdial {

std::string ModelScorer::name() const {
  return std::string(ModelKindName(model_.kind()));
}

std::vector<ScoredCandidate> ModelScorer::Score(
    const EvalInstance &instance) const {
  return model_.ScoreCandidates(instance.message.ids, instance.memory,
                                instance.candidate_ids());
}

std::vector<ScoredCandidate> RandomScorer::Score(
    const EvalInstance &instance) const {
  std::mt19937_64 rng(MixSeed(seed_, HashString(instance.id)));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<ScoredCandidate> out(instance.candidates.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = uniform(rng);
    out[i] = {i, s, s, std::nullopt};
  }
  return out;
}

std::vector<ScoredCandidate> AssertionLookupScorer::Score(
    const EvalInstance &instance) const {
  std::set<std::string> targets;
  for (AssertionId id : instance.retrieved.assertion_ids) {
    for (std::string &w : ConceptWords(index_.assertion(id).concept2)) {
      targets.insert(std::move(w));
    }
  }
  std::vector<ScoredCandidate> out(instance.candidates.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double hits = 0;
    for (const std::string &t : instance.candidates[i].tokens) {
      if (targets.count(t)) hits += 1;
    }
    out[i] = {i, hits, hits, std::nullopt};
  }
  return out;
}

std::size_t GroundTruthRank(const std::vector<ScoredCandidate> &scored,
                            std::size_t ground_truth_slot) {
  std::vector<ScoredCandidate> ranked = Rank(scored);
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    if (ranked[r].index == ground_truth_slot) return r + 1;
  }
  throw std::invalid_argument("ground-truth slot not among scored candidates");
}

RecallReport EvaluateRecall(const CandidateScorer &scorer,
                            const std::vector<EvalInstance> &instances,
                            const std::vector<std::size_t> &ks,
                            Execution execution) {
  if (instances.empty()) {
    throw std::invalid_argument("recall: no evaluation instances");
  }
  RecallReport report;
  report.instances = instances.size();
  report.candidates = instances.front().candidates.size();
  for (const EvalInstance &inst : instances) {
    if (inst.candidates.size() != report.candidates) {
      throw std::invalid_argument("recall: instances differ in candidate count");
    }
  }
  for (std::size_t k : ks) {
    if (k < 1 || k > report.candidates) {
      throw std::invalid_argument("recall: k=" + std::to_string(k) +
                                  " outside [1, " +
                                  std::to_string(report.candidates) + "]");
    }
  }
  std::vector<std::size_t> ranks(instances.size());
  ForEachIndex(instances.size(), execution, [&](std::size_t i) {
    ranks[i] = GroundTruthRank(scorer.Score(instances[i]),
                               instances[i].ground_truth_slot);
  });
  for (std::size_t k : ks) {
    std::size_t hits = 0;
    for (std::size_t r : ranks) hits += r <= k ? 1 : 0;
    report.recall[k] =
        static_cast<double>(hits) / static_cast<double>(instances.size());
  }
  return report;
}

double RecallAtK(const CandidateScorer &scorer,
                 const std::vector<EvalInstance> &instances, std::size_t k,
                 Execution execution) {
  return EvaluateRecall(scorer, instances, {k}, execution).recall.at(k);
}

std::string ToJsonLine(const MetricsRecord &record) {
  nlohmann::ordered_json j;
  j["model"] = record.model;
  j["k"] = record.k;
  j["recall"] = record.fraction;
  j["instances"] = record.instances;
  j["seed"] = record.seed;
  j["config_hash"] = HexString(record.config_hash);
  return j.dump();
}

}  // namespace kgdial
