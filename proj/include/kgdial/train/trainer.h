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

#ifndef KGDIAL_TRAIN_TRAINER_H_
#define KGDIAL_TRAIN_TRAINER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgdial/models/model.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/kernels.h"

namespace kgdial {

enum class EmbeddingInit { kRandom, kPretrained };

struct TrainConfig {
  std::size_t batch_size = 64;
  double learning_rate = 0.001;
  // Upper bound; validation may stop earlier.
  std::size_t epochs = 20;
  std::uint64_t seed = 1;
  EmbeddingInit embedding_init = EmbeddingInit::kRandom;
  std::string pretrained_embeddings;
  double init_range = 0.08;
  std::size_t patience = 5;
  // Global gradient-norm clip; 0 disables.
  double clip_norm = 0;
  Execution execution = Execution::kParallel;
  // Best checkpoint path; "<path>.last" receives every epoch. Empty skips
  // writing.
  std::string checkpoint_path;

  void Validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0;
  std::optional<double> valid_recall_at_1;
};

struct TrainResult {
  Model model;
  std::vector<EpochRecord> trace;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  // Set when a non-finite loss or gradient ended training; `model` then
  // holds the last good parameters.
  bool aborted = false;
  std::string abort_reason;
};

// Mini-batch SGD on the mean binary cross-entropy. With `validation`, the
// returned model is the epoch with the best Recall@1 and training stops
// after `patience` epochs without improvement. TF-IDF models only fit idf
// on the training messages and responses. `vocab` is needed for
// pretrained embeddings and gives TF-IDF its unknown-token id.
TrainResult Train(const ModelConfig &config,
                  const std::vector<TrainingExample> &examples,
                  const TrainConfig &train_config,
                  const std::vector<EvalInstance> *validation = nullptr,
                  const Vocabulary *vocab = nullptr);

// "epoch\tmean_loss\tvalid_recall_at_1" lines with round-trip precision.
std::string FormatLossTrace(const std::vector<EpochRecord> &trace);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_TRAINER_H_
