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

#include "kgdial/nn/functions.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kgdial::nn {

std::vector<double> Softmax(std::span<const double> z) {
  std::vector<double> out(z.size());
  if (z.empty()) return out;
  double max = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = std::exp(z[i] - max);
    total += out[i];
  }
  for (double &v : out) v /= total;
  return out;
}

double CrossEntropy(double probability, int label) {
  double p = std::clamp(probability, kProbabilityEpsilon,
                        1.0 - kProbabilityEpsilon);
  return label ? -std::log(p) : -std::log(1.0 - p);
}

double CrossEntropyWithLogit(double logit, double label) {
  return std::max(logit, 0.0) - logit * label +
         std::log1p(std::exp(-std::abs(logit)));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  return DotKernel(a.data(), b.data(), a.size());
}

std::vector<double> MatVec(const Array &a, std::span<const double> x) {
  if (a.rank() != 2 || a.cols() != x.size()) {
    throw std::invalid_argument("matvec: matrix " + a.ShapeString() +
                                " incompatible with vector of length " +
                                std::to_string(x.size()));
  }
  std::vector<double> out(a.rows());
  MatVecKernel(a.data().data(), a.rows(), a.cols(), x.data(), out.data());
  return out;
}

double Bilinear(std::span<const double> u, const Array &w,
                std::span<const double> v) {
  if (w.rank() != 2 || w.rows() != u.size() || w.cols() != v.size()) {
    throw std::invalid_argument("bilinear: W " + w.ShapeString() +
                                " incompatible with u[" +
                                std::to_string(u.size()) + "], v[" +
                                std::to_string(v.size()) + "]");
  }
  std::vector<double> wv = MatVec(w, v);
  return Dot(u, wv);
}

}  // namespace kgdial::nn
