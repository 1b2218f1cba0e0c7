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

#include "kgdial/nn/sgd.h"

#include <cmath>
#include <stdexcept>

namespace kgdial::nn {

void SgdStep(ParameterStore &store, const Gradients &grads,
             double learning_rate) {
  if (!(learning_rate >= 0)) {
    throw std::invalid_argument("sgd: learning rate must be non-negative");
  }
  if (grads.size() != store.size()) {
    throw std::invalid_argument("sgd: gradient buffer does not match store");
  }
  if (auto bad = grads.FirstNonFinite()) {
    throw std::runtime_error("sgd: non-finite gradient in parameter '" +
                             store.name(*bad) + "'");
  }
  for (ParamId id = 0; id < store.size(); ++id) {
    Array &theta = store.mutable_value(id);
    const Array &g = grads[id];
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta[i] -= learning_rate * g[i];
    }
  }
}

double ClipGlobalNorm(Gradients &grads, double max_norm) {
  double norm = std::sqrt(grads.SquaredNorm());
  if (max_norm > 0 && norm > max_norm) grads.Scale(max_norm / norm);
  return norm;
}

}  // namespace kgdial::nn
