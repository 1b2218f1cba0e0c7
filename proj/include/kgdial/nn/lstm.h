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

#ifndef KGDIAL_NN_LSTM_H_
#define KGDIAL_NN_LSTM_H_

#include <random>
#include <span>
#include <string>
#include <vector>

#include "kgdial/nn/array.h"
#include "kgdial/nn/parameter_store.h"
#include "kgdial/nn/tape.h"

namespace kgdial::nn {

// Parameters of one LSTM layer. Gate blocks are stacked in the order
// input, forget, cell candidate, output:
//   z = W x + U h + b      W: [4D x E], U: [4D x D], b: [4D]
//   i = s(z_i)  f = s(z_f)  g = tanh(z_g)  o = s(z_o)
//   c' = f*c + i*g          h' = o*tanh(c')
struct LstmParams {
  ParamId input_weights;
  ParamId recurrent_weights;
  ParamId bias;
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;

  // Adds "<prefix>.W", "<prefix>.U", "<prefix>.b" to the store. Weights are
  // uniform(-init_range, init_range); the forget-gate bias starts at
  // forget_bias, other biases at zero.
  static LstmParams Create(ParameterStore &store, const std::string &prefix,
                           std::size_t input_dim, std::size_t hidden_dim,
                           std::mt19937_64 &rng, double init_range = 0.08,
                           double forget_bias = 1.0);
  // Resolves an existing set of parameters by prefix, checking shapes.
  static LstmParams Lookup(const ParameterStore &store,
                           const std::string &prefix);
};

// Runs the recurrence over the rows of `embeddings` ([T x E]) and returns
// the last hidden state. An empty sequence encodes to the zero vector.
std::vector<double> LstmEncode(const ParameterStore &store,
                               const LstmParams &params,
                               const Array &embeddings);

// Same recurrence over embedding-table rows selected by `ids`.
std::vector<double> LstmEncodeIds(const ParameterStore &store,
                                  const LstmParams &params,
                                  const Array &embedding_table,
                                  std::span<const int> ids);

// Tape version of LstmEncodeIds; the embedding table must be a parameter.
Var LstmEncodeOnTape(Tape &tape, const LstmParams &params,
                     Var embedding_table, std::span<const int> ids);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_LSTM_H_
