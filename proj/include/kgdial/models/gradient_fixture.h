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

#ifndef KGDIAL_MODELS_GRADIENT_FIXTURE_H_
#define KGDIAL_MODELS_GRADIENT_FIXTURE_H_

#include <cstdint>
#include <vector>

#include "kgdial/models/model.h"
#include "kgdial/nn/gradient_check.h"
#include "kgdial/train/dataset.h"

namespace kgdial {

// Small random problem for checking a model's analytic gradient.
struct GradientFixtureOptions {
  std::size_t vocab_size = 32;
  std::size_t embedding_dim = 8;
  std::size_t hidden_dim = 16;
  std::size_t max_memory = 5;
  std::size_t max_length = 5;
  std::size_t examples = 4;
  // 0 selects 1.0 for LSTM models and 0.3 for the others.
  double init_range = 0;
  // Max-pooling models need the best match ahead of the runner-up by at
  // least this much in every example.
  double min_argmax_gap = 1e-3;
};

struct GradientFixture {
  Model model;
  std::vector<TrainingExample> examples;
};

// Draws parameters and examples from `seed`, re-drawing until the argmax
// gap holds. Throws std::invalid_argument for tf-idf.
GradientFixture MakeGradientFixture(ModelKind kind, std::uint64_t seed,
                                    const GradientFixtureOptions &options = {});

// Mean binary cross-entropy of the fixture examples, with gradients when
// `grads` is non-null.
double FixtureLoss(const GradientFixture &fixture,
                   const nn::ParameterStore &params, nn::Gradients *grads);

nn::GradientCheckResult CheckModelGradient(
    ModelKind kind, double eps, std::size_t samples, std::uint64_t seed,
    const GradientFixtureOptions &options = {});

}  // namespace kgdial

#endif  // KGDIAL_MODELS_GRADIENT_FIXTURE_H_
