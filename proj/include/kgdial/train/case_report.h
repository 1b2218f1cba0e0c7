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

#ifndef KGDIAL_TRAIN_CASE_REPORT_H_
#define KGDIAL_TRAIN_CASE_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/models/model.h"
#include "kgdial/train/dataset.h"

namespace kgdial {

struct ModelSelection {
  std::string model;
  std::size_t selected_slot = 0;
  std::string response;
  double score = 0;
  bool correct = false;
  std::optional<Assertion> activated;
};

struct CaseRecord {
  std::string id;
  std::string message;
  std::string ground_truth;
  std::vector<std::string> matched_concepts;
  std::size_t assertion_count = 0;
  ModelSelection baseline;
  ModelSelection knowledge;
};

// Builds a record from two candidate scorings of the same instance. Only the
// knowledge selection carries an activated assertion.
CaseRecord MakeCaseRecord(const EvalInstance &instance,
                          const KnowledgeIndex &index,
                          const std::string &baseline_name,
                          const std::vector<ScoredCandidate> &baseline_scores,
                          const std::string &knowledge_name,
                          const std::vector<ScoredCandidate> &knowledge_scores);

// Scores `instance` with both models. Throws std::invalid_argument unless
// `baseline` ignores knowledge and `knowledge` reads it.
CaseRecord CaseReport(const Model &baseline, const Model &knowledge,
                      const EvalInstance &instance,
                      const KnowledgeIndex &index);

// Plain-text table: message, each model's response with a correctness mark,
// and the activated assertion followed by |A_x| in parentheses.
std::string RenderCaseTable(const std::vector<CaseRecord> &records);

nlohmann::ordered_json ToJson(const CaseRecord &record);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_CASE_REPORT_H_
