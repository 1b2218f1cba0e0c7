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

#include "kgdial/nn/lstm.h"

#include <cmath>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "kgdial/nn/functions.h"

namespace kgdial::nn {

namespace {

// One recurrence step on raw buffers; mirrors the tape graph operation by
// operation so both paths round identically.
void Step(const LstmParams &p, const double *w, const double *u,
          const double *b, const double *x, std::vector<double> &h,
          std::vector<double> &c, std::vector<double> &scratch_wx,
          std::vector<double> &scratch_uh) {
  const std::size_t d = p.hidden_dim;
  const std::size_t e = p.input_dim;
  MatVecKernel(w, 4 * d, e, x, scratch_wx.data());
  MatVecKernel(u, 4 * d, d, h.data(), scratch_uh.data());
  for (std::size_t k = 0; k < 4 * d; ++k) {
    scratch_wx[k] = scratch_wx[k] + scratch_uh[k];
    scratch_wx[k] = scratch_wx[k] + b[k];
  }
  for (std::size_t k = 0; k < d; ++k) {
    double in = Sigmoid(scratch_wx[k]);
    double forget = Sigmoid(scratch_wx[d + k]);
    double cand = std::tanh(scratch_wx[2 * d + k]);
    double out = Sigmoid(scratch_wx[3 * d + k]);
    double fc = forget * c[k];
    double ig = in * cand;
    c[k] = fc + ig;
    h[k] = out * std::tanh(c[k]);
  }
}

}  // namespace

LstmParams LstmParams::Create(ParameterStore &store, const std::string &prefix,
                              std::size_t input_dim, std::size_t hidden_dim,
                              std::mt19937_64 &rng, double init_range,
                              double forget_bias) {
  std::uniform_real_distribution<double> uniform(-init_range, init_range);
  Array w({4 * hidden_dim, input_dim});
  for (double &v : w.data()) v = uniform(rng);
  Array u({4 * hidden_dim, hidden_dim});
  for (double &v : u.data()) v = uniform(rng);
  Array b({4 * hidden_dim});
  for (std::size_t k = hidden_dim; k < 2 * hidden_dim; ++k) b[k] = forget_bias;

  LstmParams p;
  p.input_weights = store.Add(prefix + ".W", std::move(w));
  p.recurrent_weights = store.Add(prefix + ".U", std::move(u));
  p.bias = store.Add(prefix + ".b", std::move(b));
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  return p;
}

LstmParams LstmParams::Lookup(const ParameterStore &store,
                              const std::string &prefix) {
  LstmParams p;
  p.input_weights = store.IdOf(prefix + ".W");
  p.recurrent_weights = store.IdOf(prefix + ".U");
  p.bias = store.IdOf(prefix + ".b");
  const Array &w = store.value(p.input_weights);
  const Array &u = store.value(p.recurrent_weights);
  const Array &b = store.value(p.bias);
  if (w.rank() != 2 || w.rows() % 4 != 0) {
    throw std::invalid_argument(prefix + ".W has shape " + w.ShapeString());
  }
  p.hidden_dim = w.rows() / 4;
  p.input_dim = w.cols();
  if (u.rank() != 2 || u.rows() != 4 * p.hidden_dim ||
      u.cols() != p.hidden_dim || b.size() != 4 * p.hidden_dim) {
    throw std::invalid_argument(prefix + ": inconsistent LSTM shapes");
  }
  return p;
}

std::vector<double> LstmEncode(const ParameterStore &store,
                               const LstmParams &params,
                               const Array &embeddings) {
  const std::size_t d = params.hidden_dim;
  std::vector<double> h(d, 0.0), c(d, 0.0);
  if (embeddings.size() == 0) {
    spdlog::debug("lstm: empty sequence encoded as the zero vector");
    return h;
  }
  if (embeddings.cols() != params.input_dim) {
    throw std::invalid_argument("lstm: embedding width " +
                                std::to_string(embeddings.cols()) +
                                " != input dim " +
                                std::to_string(params.input_dim));
  }
  std::vector<double> wx(4 * d), uh(4 * d);
  const double *w = store.value(params.input_weights).data().data();
  const double *u = store.value(params.recurrent_weights).data().data();
  const double *b = store.value(params.bias).data().data();
  for (std::size_t t = 0; t < embeddings.rows(); ++t) {
    Step(params, w, u, b, embeddings.row(t).data(), h, c, wx, uh);
  }
  return h;
}

std::vector<double> LstmEncodeIds(const ParameterStore &store,
                                  const LstmParams &params,
                                  const Array &embedding_table,
                                  std::span<const int> ids) {
  const std::size_t d = params.hidden_dim;
  std::vector<double> h(d, 0.0), c(d, 0.0);
  if (ids.empty()) {
    spdlog::debug("lstm: empty sequence encoded as the zero vector");
    return h;
  }
  if (embedding_table.cols() != params.input_dim) {
    throw std::invalid_argument("lstm: embedding width mismatch");
  }
  std::vector<double> wx(4 * d), uh(4 * d);
  const double *w = store.value(params.input_weights).data().data();
  const double *u = store.value(params.recurrent_weights).data().data();
  const double *b = store.value(params.bias).data().data();
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= embedding_table.rows()) {
      throw std::out_of_range("lstm: token id out of range");
    }
    Step(params, w, u, b, embedding_table.row(id).data(), h, c, wx, uh);
  }
  return h;
}

Var LstmEncodeOnTape(Tape &tape, const LstmParams &params,
                     Var embedding_table, std::span<const int> ids) {
  const std::size_t d = params.hidden_dim;
  Var h = tape.Zeros(d);
  if (ids.empty()) return h;
  Var c = tape.Zeros(d);
  Var w = tape.Param(params.input_weights);
  Var u = tape.Param(params.recurrent_weights);
  Var b = tape.Param(params.bias);
  for (int id : ids) {
    Var x = tape.Row(embedding_table, static_cast<std::size_t>(id));
    Var z = tape.Add(tape.Add(tape.MatVec(w, x), tape.MatVec(u, h)), b);
    Var in = tape.Sigmoid(tape.Slice(z, 0, d));
    Var forget = tape.Sigmoid(tape.Slice(z, d, d));
    Var cand = tape.Tanh(tape.Slice(z, 2 * d, d));
    Var out = tape.Sigmoid(tape.Slice(z, 3 * d, d));
    c = tape.Add(tape.Mul(forget, c), tape.Mul(in, cand));
    h = tape.Mul(out, tape.Tanh(c));
  }
  return h;
}

}  // namespace kgdial::nn
