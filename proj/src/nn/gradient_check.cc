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

#include "kgdial/nn/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kgdial::nn {

GradientCheckResult FiniteDifferenceCheck(const LossFunction &loss,
                                          ParameterStore store, double eps,
                                          std::size_t samples,
                                          std::uint64_t seed) {
  if (!(eps >= 1e-7 && eps <= 1e-3)) {
    throw std::invalid_argument("gradient check: eps must be in [1e-7, 1e-3]");
  }
  Gradients grads(store);
  loss(store, &grads);

  std::vector<double> analytic;
  analytic.reserve(store.total_size());
  for (ParamId id = 0; id < store.size(); ++id) {
    auto g = grads[id].data();
    analytic.insert(analytic.end(), g.begin(), g.end());
  }

  std::vector<std::size_t> coords(analytic.size());
  std::iota(coords.begin(), coords.end(), 0);
  if (samples < coords.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(samples);
    std::sort(coords.begin(), coords.end());
  }

  GradientCheckResult result;
  for (std::size_t flat : coords) {
    double &theta = store.Coordinate(flat);
    const double original = theta;
    theta = original + eps;
    double plus = loss(store, nullptr);
    theta = original - eps;
    double minus = loss(store, nullptr);
    theta = original;

    double numeric = (plus - minus) / (2 * eps);
    double a = analytic[flat];
    double rel = std::abs(a - numeric) / (std::abs(a) + std::abs(numeric) + 1e-10);
    ++result.coordinates_checked;
    if (rel > result.max_relative_error || result.coordinates_checked == 1) {
      result.max_relative_error = rel;
      result.worst_coordinate = flat;
      result.worst_analytic = a;
      result.worst_numeric = numeric;
    }
  }
  return result;
}

}  // namespace kgdial::nn
