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

#ifndef KGDIAL_NN_SGD_H_
#define KGDIAL_NN_SGD_H_

#include "kgdial/nn/parameter_store.h"

namespace kgdial::nn {

// theta <- theta - learning_rate * grad for every written gradient entry.
// Throws std::runtime_error naming the first parameter whose gradient is
// not finite; the store is left untouched in that case.
void SgdStep(ParameterStore &store, const Gradients &grads,
             double learning_rate);

// Rescales `grads` so its global L2 norm is at most max_norm. Returns the
// norm before clipping.
double ClipGlobalNorm(Gradients &grads, double max_norm);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_SGD_H_
