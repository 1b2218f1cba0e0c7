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

#ifndef KGDIAL_NN_FUNCTIONS_H_
#define KGDIAL_NN_FUNCTIONS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "kgdial/nn/array.h"

namespace kgdial::nn {

// Probability clamp used by CrossEntropy().
inline constexpr double kProbabilityEpsilon = 1e-12;

// Logistic function, evaluated without overflow for large |z|.
inline double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// Shift-invariant softmax (subtracts the maximum first).
std::vector<double> Softmax(std::span<const double> z);

// -label*log(p) - (1-label)*log(1-p) with p clamped to [eps, 1-eps].
double CrossEntropy(double probability, int label);

// CrossEntropy(Sigmoid(logit), label) in the stable softplus form.
double CrossEntropyWithLogit(double logit, double label);

// Kernels shared by the tape and the direct inference path, so both
// produce identical rounding.
inline double DotKernel(const double *a, const double *b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline void MatVecKernel(const double *a, std::size_t rows, std::size_t cols,
                         const double *x, double *out) {
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = DotKernel(a + r * cols, x, cols);
  }
}

double Dot(std::span<const double> a, std::span<const double> b);
// A * x for a rows x cols matrix.
std::vector<double> MatVec(const Array &a, std::span<const double> x);
// u^T W v, evaluated as dot(u, W v). Throws std::invalid_argument on shape
// mismatch.
double Bilinear(std::span<const double> u, const Array &w,
                std::span<const double> v);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_FUNCTIONS_H_
