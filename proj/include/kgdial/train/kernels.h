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

#ifndef KGDIAL_TRAIN_KERNELS_H_
#define KGDIAL_TRAIN_KERNELS_H_

#include <exception>
#include <span>
#include <vector>

#include "kgdial/models/model.h"
#include "kgdial/nn/parameter_store.h"
#include "kgdial/train/dataset.h"

namespace kgdial {

enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, n), across OpenMP threads in parallel mode.
// Exceptions are collected per index and the lowest-index one rethrown.
template <typename Body>
void ForEachIndex(std::size_t n, Execution execution, Body &&body) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) if (execution == Execution::kParallel)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Per-example gradient buffers reused across batches. Both execution modes
// compute each example into its own buffer and reduce in example order, so
// they agree bit for bit.
class GradientWorkspace {
 public:
  explicit GradientWorkspace(const nn::ParameterStore &store,
                             std::size_t capacity);

  // Fills `total` with the summed gradient of the batch and returns the
  // summed loss. Losses and gradients are not divided by the batch size.
  double BatchGradient(const Model &model,
                       std::span<const TrainingExample *const> batch,
                       nn::Gradients &total, Execution execution);

 private:
  std::vector<nn::Gradients> buffers_;
  std::vector<double> losses_;
};

// Gradient and loss of a single example.
double ExampleGradient(const Model &model, const TrainingExample &example,
                       nn::Gradients &grads);

// Scores every instance; the result is identical in both modes.
std::vector<std::vector<ScoredCandidate>> ScoreInstances(
    const Model &model, const std::vector<EvalInstance> &instances,
    Execution execution);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_KERNELS_H_
