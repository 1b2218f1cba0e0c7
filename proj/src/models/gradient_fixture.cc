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

#include "kgdial/models/gradient_fixture.h"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "kgdial/nn/functions.h"
#include "kgdial/nn/tape.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

constexpr int kMaxAttempts = 100;

std::vector<int> RandomIds(std::mt19937_64 &rng, std::size_t vocab,
                           std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> id(0, static_cast<int>(vocab) - 1);
  std::vector<int> out(len(rng));
  for (int &v : out) v = id(rng);
  return out;
}

// Smallest gap between the best and second-best match over the examples.
double ArgmaxGap(const Model &model,
                 const std::vector<TrainingExample> &examples) {
  double gap = std::numeric_limits<double>::infinity();
  for (const TrainingExample &ex : examples) {
    if (ex.memory.size() < 2) continue;
    Embedding y = model.Encode(ex.response, EncoderRole::kResponse);
    std::vector<double> way;
    if (model.kind() == ModelKind::kTriLstm) {
      way = nn::MatVec(model.params()["W_a"], y);
    } else {
      way = y;
    }
    std::vector<double> matches;
    for (const auto &seq : ex.memory.sequences) {
      matches.push_back(
          nn::Dot(model.Encode(seq, EncoderRole::kAssertion), way));
    }
    std::sort(matches.rbegin(), matches.rend());
    gap = std::min(gap, matches[0] - matches[1]);
  }
  return gap;
}

}  // namespace

GradientFixture MakeGradientFixture(ModelKind kind, std::uint64_t seed,
                                    const GradientFixtureOptions &options) {
  if (kind == ModelKind::kTfIdf) {
    throw std::invalid_argument("tf-idf has no gradient to check");
  }
  ModelConfig config;
  config.kind = kind;
  config.vocab_size = options.vocab_size;
  config.embedding_dim = options.embedding_dim;
  config.hidden_dim = options.hidden_dim;
  double init_range = options.init_range;
  if (init_range == 0) {
    init_range = kind == ModelKind::kDualLstm || kind == ModelKind::kTriLstm
                     ? 1.0
                     : 0.3;
  }
  const bool max_pooled =
      kind == ModelKind::kTriLstm || kind == ModelKind::kBowKnowledge;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::uint64_t s = MixSeed(seed, static_cast<std::uint64_t>(attempt));
    std::mt19937_64 rng(s);
    GradientFixture fixture{Model::Initialize(config, s, init_range),
                            {}};
    std::uniform_int_distribution<std::size_t> memory_size(
        1, options.max_memory);
    for (std::size_t e = 0; e < options.examples; ++e) {
      TrainingExample ex;
      ex.message = RandomIds(rng, options.vocab_size, 1, options.max_length);
      ex.response = RandomIds(rng, options.vocab_size, 1, options.max_length);
      ex.label = static_cast<int>(e % 2);
      if (UsesKnowledge(kind)) {
        std::size_t n = memory_size(rng);
        for (std::size_t i = 0; i < n; ++i) {
          ex.memory.ids.push_back(static_cast<AssertionId>(i));
          ex.memory.sequences.push_back(
              RandomIds(rng, options.vocab_size, 3, 4));
        }
      }
      fixture.examples.push_back(std::move(ex));
    }
    if (!max_pooled ||
        ArgmaxGap(fixture.model, fixture.examples) >= options.min_argmax_gap) {
      return fixture;
    }
  }
  throw std::runtime_error("gradient fixture: no draw with a clear argmax");
}

double FixtureLoss(const GradientFixture &fixture,
                   const nn::ParameterStore &params, nn::Gradients *grads) {
  Model model(fixture.model.config(), params);
  nn::Tape tape(model.params());
  std::vector<nn::Var> losses;
  for (const TrainingExample &ex : fixture.examples) {
    losses.push_back(
        model.Loss(tape, ex.message, ex.memory, ex.response, ex.label));
  }
  nn::Var total = tape.Scale(tape.Sum(losses),
                             1.0 / static_cast<double>(losses.size()));
  if (grads) tape.Backward(total, *grads);
  return tape.Scalar(total);
}

nn::GradientCheckResult CheckModelGradient(
    ModelKind kind, double eps, std::size_t samples, std::uint64_t seed,
    const GradientFixtureOptions &options) {
  GradientFixture fixture = MakeGradientFixture(kind, seed, options);
  auto loss = [&](const nn::ParameterStore &params, nn::Gradients *grads) {
    return FixtureLoss(fixture, params, grads);
  };
  return nn::FiniteDifferenceCheck(loss, fixture.model.params(), eps, samples,
                                   seed);
}

}  // namespace kgdial
