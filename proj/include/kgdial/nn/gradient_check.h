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

#ifndef KGDIAL_NN_GRADIENT_CHECK_H_
#define KGDIAL_NN_GRADIENT_CHECK_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "kgdial/nn/parameter_store.h"

namespace kgdial::nn {

// Evaluates the loss at the store's current values. When `grads` is
// non-null it must also accumulate the analytic gradient into it.
using LossFunction =
    std::function<double(const ParameterStore &store, Gradients *grads)>;

struct GradientCheckResult {
  double max_relative_error = 0;
  std::size_t worst_coordinate = 0;
  double worst_analytic = 0;
  double worst_numeric = 0;
  std::size_t coordinates_checked = 0;
};

// Compares central differences (f(t+eps) - f(t-eps)) / 2eps on `samples`
// randomly chosen coordinates (all of them when samples >= total size)
// against the analytic gradient. Relative error is
// |a - n| / (|a| + |n| + 1e-10). eps must lie in [1e-7, 1e-3].
GradientCheckResult FiniteDifferenceCheck(const LossFunction &loss,
                                          ParameterStore store, double eps,
                                          std::size_t samples,
                                          std::uint64_t seed);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_GRADIENT_CHECK_H_
