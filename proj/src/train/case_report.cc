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

#include "kgdial/train/case_report.h"

#include <sstream>
#include <stdexcept>

#include "kgdial/text/normalize.h"

namespace kgdial {

namespace {

ModelSelection Select(const EvalInstance &instance, const KnowledgeIndex &index,
                      const std::string &name,
                      const std::vector<ScoredCandidate> &scores,
                      bool with_assertion) {
  if (scores.size() != instance.candidates.size()) {
    throw std::invalid_argument("case report: " + name +
                                " scored the wrong number of candidates");
  }
  const ScoredCandidate top = Rank(scores).front();
  ModelSelection s;
  s.model = name;
  s.selected_slot = top.index;
  s.response = JoinTokens(instance.candidates.at(top.index).tokens);
  s.score = top.score;
  s.correct = top.index == instance.ground_truth_slot;
  if (with_assertion && top.activated_assertion) {
    s.activated = index.assertion(*top.activated_assertion);
  }
  return s;
}

nlohmann::ordered_json SelectionJson(const ModelSelection &s) {
  nlohmann::ordered_json j;
  j["model"] = s.model;
  j["selected"] = s.selected_slot;
  j["response"] = s.response;
  j["score"] = s.score;
  j["correct"] = s.correct;
  if (s.activated) {
    j["activated_assertion"] = {s.activated->concept1, s.activated->relation,
                                s.activated->concept2};
  }
  return j;
}

std::string Mark(bool correct) { return correct ? " [correct]" : ""; }

}  // namespace

CaseRecord MakeCaseRecord(const EvalInstance &instance,
                          const KnowledgeIndex &index,
                          const std::string &baseline_name,
                          const std::vector<ScoredCandidate> &baseline_scores,
                          const std::string &knowledge_name,
                          const std::vector<ScoredCandidate> &knowledge_scores) {
  CaseRecord r;
  r.id = instance.id;
  r.message = JoinTokens(instance.message.tokens);
  r.ground_truth = JoinTokens(instance.ground_truth().tokens);
  for (const ConceptMatch &m : instance.retrieved.matched_concepts) {
    r.matched_concepts.push_back(m.key);
  }
  r.assertion_count = instance.retrieved.size();
  r.baseline = Select(instance, index, baseline_name, baseline_scores, false);
  r.knowledge =
      Select(instance, index, knowledge_name, knowledge_scores, true);
  return r;
}

CaseRecord CaseReport(const Model &baseline, const Model &knowledge,
                      const EvalInstance &instance,
                      const KnowledgeIndex &index) {
  if (UsesKnowledge(baseline.kind())) {
    throw std::invalid_argument("case report: baseline model reads knowledge");
  }
  if (!UsesKnowledge(knowledge.kind())) {
    throw std::invalid_argument(
        "case report: knowledge model does not read knowledge");
  }
  auto ids = instance.candidate_ids();
  return MakeCaseRecord(
      instance, index, std::string(ModelKindName(baseline.kind())),
      baseline.ScoreCandidates(instance.message.ids, instance.memory, ids),
      std::string(ModelKindName(knowledge.kind())),
      knowledge.ScoreCandidates(instance.message.ids, instance.memory, ids));
}

std::string RenderCaseTable(const std::vector<CaseRecord> &records) {
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CaseRecord &r = records[i];
    out << "instance " << (i + 1) << '\n';
    out << "  message: " << r.message << '\n';
    out << "  " << r.baseline.model << ": " << r.baseline.response
        << Mark(r.baseline.correct) << '\n';
    out << "  " << r.knowledge.model << ": " << r.knowledge.response
        << Mark(r.knowledge.correct) << '\n';
    out << "  activated assertion: ";
    if (r.knowledge.activated) {
      out << ToString(*r.knowledge.activated);
    } else {
      out << "-";
    }
    out << " (" << r.assertion_count << ")\n";
  }
  return out.str();
}

nlohmann::ordered_json ToJson(const CaseRecord &record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["message"] = record.message;
  j["ground_truth"] = record.ground_truth;
  j["matched_concepts"] = record.matched_concepts;
  j["assertion_count"] = record.assertion_count;
  j["baseline"] = SelectionJson(record.baseline);
  j["knowledge"] = SelectionJson(record.knowledge);
  return j;
}

}  // namespace kgdial
