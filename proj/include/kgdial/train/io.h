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

#ifndef KGDIAL_TRAIN_IO_H_
#define KGDIAL_TRAIN_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/text/vocabulary.h"
#include "kgdial/train/dataset.h"

namespace kgdial {

// "message \t response [\t group]" per line; blank lines skipped. Throws
// std::runtime_error naming the line number of a malformed line.
std::vector<DialoguePair> ReadPairs(std::istream &in);
std::vector<DialoguePair> ReadPairsFile(const std::string &path);
void WritePairs(std::ostream &out, const std::vector<DialoguePair> &pairs);
void WritePairsFile(const std::string &path,
                    const std::vector<DialoguePair> &pairs);

// One JSON object per line with id, message, ground_truth, distractors,
// ground_truth_slot and group. Texts are the space-joined tokens.
void WriteInstances(std::ostream &out,
                    const std::vector<EvalInstance> &instances);
void WriteInstancesFile(const std::string &path,
                        const std::vector<EvalInstance> &instances);
// Re-encodes the texts with `vocab` and, when `index` is given, recomputes
// retrieval.
std::vector<EvalInstance> ReadInstances(std::istream &in,
                                        const Vocabulary &vocab,
                                        const KnowledgeIndex *index);
std::vector<EvalInstance> ReadInstancesFile(const std::string &path,
                                            const Vocabulary &vocab,
                                            const KnowledgeIndex *index);

void WriteTextFile(const std::string &path, const std::string &contents);
std::string ReadTextFile(const std::string &path);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_IO_H_
