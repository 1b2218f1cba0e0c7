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

#include "kgdial/train/kernels.h"

#include "kgdial/nn/tape.h"

namespace kgdial {

double ExampleGradient(const Model &model, const TrainingExample &example,
                       nn::Gradients &grads) {
  nn::Tape tape(model.params());
  nn::Var loss = model.Loss(tape, example.message, example.memory,
                            example.response, example.label);
  double value = tape.Scalar(loss);
  tape.Backward(loss, grads);
  return value;
}

GradientWorkspace::GradientWorkspace(const nn::ParameterStore &store,
                                     std::size_t capacity)
    : buffers_(capacity, nn::Gradients(store)), losses_(capacity, 0.0) {}

double GradientWorkspace::BatchGradient(
    const Model &model, std::span<const TrainingExample *const> batch,
    nn::Gradients &total, Execution execution) {
  if (batch.size() > buffers_.size()) {
    buffers_.resize(batch.size(), nn::Gradients(model.params()));
    losses_.resize(batch.size(), 0.0);
  }
  ForEachIndex(batch.size(), execution, [&](std::size_t i) {
    buffers_[i].Clear();
    losses_[i] = ExampleGradient(model, *batch[i], buffers_[i]);
  });
  total.Clear();
  double loss = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    total.Accumulate(buffers_[i]);
    loss += losses_[i];
  }
  return loss;
}

std::vector<std::vector<ScoredCandidate>> ScoreInstances(
    const Model &model, const std::vector<EvalInstance> &instances,
    Execution execution) {
  std::vector<std::vector<ScoredCandidate>> out(instances.size());
  ForEachIndex(instances.size(), execution, [&](std::size_t i) {
    const EvalInstance &inst = instances[i];
    out[i] = model.ScoreCandidates(inst.message.ids, inst.memory,
                                   inst.candidate_ids());
  });
  return out;
}

}  // namespace kgdial
