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

#include "kgdial/nn/tape.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kgdial/nn/functions.h"

namespace kgdial::nn {

namespace {

[[noreturn]] void ShapeError(const char *op, std::size_t r1, std::size_t c1,
                             std::size_t r2, std::size_t c2) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes [" +
                              std::to_string(r1) + "x" + std::to_string(c1) +
                              "] and [" + std::to_string(r2) + "x" +
                              std::to_string(c2) + "]");
}

}  // namespace

Tape::Tape(const ParameterStore &store) : store_(store) {
  nodes_.reserve(256);
  values_.reserve(4096);
}

Var Tape::Push(Op op, std::size_t rows, std::size_t cols,
               std::initializer_list<Var> inputs, std::size_t aux,
               double aux_value) {
  Node n;
  n.op = op;
  n.rows = static_cast<std::uint32_t>(rows);
  n.cols = static_cast<std::uint32_t>(cols);
  n.offset = values_.size();
  n.in_begin = static_cast<std::uint32_t>(operands_.size());
  n.in_count = static_cast<std::uint32_t>(inputs.size());
  n.aux = aux;
  n.aux_value = aux_value;
  for (Var v : inputs) operands_.push_back(v.id);
  if (op != Op::kParam) values_.resize(values_.size() + rows * cols, 0.0);
  nodes_.push_back(n);
  return Var{static_cast<std::int32_t>(nodes_.size() - 1)};
}

Var Tape::PushN(Op op, std::size_t rows, std::size_t cols,
                std::span<const Var> inputs, std::size_t aux) {
  Var v = Push(op, rows, cols, {}, aux);
  Node &n = nodes_[v.id];
  n.in_count = static_cast<std::uint32_t>(inputs.size());
  for (Var in : inputs) operands_.push_back(in.id);
  return v;
}

const double *Tape::ValuePtr(std::int32_t id) const {
  const Node &n = nodes_[id];
  if (n.op == Op::kParam) return store_.value(n.aux).data().data();
  return values_.data() + n.offset;
}

std::span<const double> Tape::Value(Var v) const {
  return {ValuePtr(v.id), size(v)};
}

double Tape::Scalar(Var v) const {
  if (size(v) != 1) throw std::invalid_argument("tape: node is not a scalar");
  return ValuePtr(v.id)[0];
}

std::size_t Tape::ArgMax(Var max_node) const {
  if (node(max_node).op != Op::kMax) {
    throw std::invalid_argument("tape: ArgMax on a non-max node");
  }
  return node(max_node).aux;
}

Var Tape::Constant(std::span<const double> values, std::size_t rows,
                   std::size_t cols) {
  if (values.size() != rows * cols) {
    throw std::invalid_argument("tape: constant size mismatch");
  }
  Var v = Push(Op::kConstant, rows, cols, {});
  std::copy(values.begin(), values.end(), MutableValue(v.id));
  return v;
}

Var Tape::Constant(const Array &value) {
  return Constant(value.data(), value.rows(), value.cols());
}

Var Tape::Zeros(std::size_t rows, std::size_t cols) {
  return Push(Op::kConstant, rows, cols, {});
}

Var Tape::Param(ParamId id) {
  auto it = param_nodes_.find(id);
  if (it != param_nodes_.end()) return Var{it->second};
  const Array &value = store_.value(id);
  Var v = Push(Op::kParam, value.rows(), value.cols(), {}, id);
  param_nodes_.emplace(id, v.id);
  return v;
}

Var Tape::Row(Var matrix, std::size_t r) {
  std::size_t cols = this->cols(matrix);
  if (r >= rows(matrix)) {
    throw std::out_of_range("tape: row " + std::to_string(r) +
                            " out of range");
  }
  Var v = Push(Op::kRow, cols, 1, {matrix}, r);
  const double *src = ValuePtr(matrix.id) + r * cols;
  std::copy(src, src + cols, MutableValue(v.id));
  return v;
}

Var Tape::MatVec(Var matrix, Var vector) {
  std::size_t m = rows(matrix), n = cols(matrix);
  if (cols(vector) != 1 || rows(vector) != n) {
    ShapeError("matvec", m, n, rows(vector), cols(vector));
  }
  Var v = Push(Op::kMatVec, m, 1, {matrix, vector});
  MatVecKernel(ValuePtr(matrix.id), m, n, ValuePtr(vector.id),
               MutableValue(v.id));
  return v;
}

Var Tape::MatTVec(Var matrix, Var vector) {
  std::size_t m = rows(matrix), n = cols(matrix);
  if (cols(vector) != 1 || rows(vector) != m) {
    ShapeError("mattvec", m, n, rows(vector), cols(vector));
  }
  Var v = Push(Op::kMatTVec, n, 1, {matrix, vector});
  const double *a = ValuePtr(matrix.id);
  const double *x = ValuePtr(vector.id);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += a[i * n + j] * x[i];
  }
  return v;
}

Var Tape::Add(Var a, Var b) {
  Var terms[2] = {a, b};
  return Sum(terms);
}

Var Tape::Sum(std::span<const Var> terms) {
  if (terms.empty()) throw std::invalid_argument("tape: empty sum");
  std::size_t r = rows(terms[0]), c = cols(terms[0]);
  for (Var t : terms) {
    if (rows(t) != r || cols(t) != c) ShapeError("sum", r, c, rows(t), cols(t));
  }
  Var v = PushN(Op::kSum, r, c, terms);
  double *out = MutableValue(v.id);
  const std::size_t n = r * c;
  const double *first = ValuePtr(terms[0].id);
  std::copy(first, first + n, out);
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const double *x = ValuePtr(terms[k].id);
    for (std::size_t i = 0; i < n; ++i) out[i] += x[i];
  }
  return v;
}

Var Tape::Mul(Var a, Var b) {
  if (rows(a) != rows(b) || cols(a) != cols(b)) {
    ShapeError("mul", rows(a), cols(a), rows(b), cols(b));
  }
  Var v = Push(Op::kMul, rows(a), cols(a), {a, b});
  const double *x = ValuePtr(a.id);
  const double *y = ValuePtr(b.id);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0, n = size(a); i < n; ++i) out[i] = x[i] * y[i];
  return v;
}

Var Tape::Scale(Var x, double factor) {
  Var v = Push(Op::kScale, rows(x), cols(x), {x}, 0, factor);
  const double *in = ValuePtr(x.id);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0, n = size(x); i < n; ++i) out[i] = in[i] * factor;
  return v;
}

Var Tape::Sigmoid(Var x) {
  Var v = Push(Op::kSigmoid, rows(x), cols(x), {x});
  const double *in = ValuePtr(x.id);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0, n = size(x); i < n; ++i) out[i] = nn::Sigmoid(in[i]);
  return v;
}

Var Tape::Tanh(Var x) {
  Var v = Push(Op::kTanh, rows(x), cols(x), {x});
  const double *in = ValuePtr(x.id);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0, n = size(x); i < n; ++i) out[i] = std::tanh(in[i]);
  return v;
}

Var Tape::Slice(Var x, std::size_t offset, std::size_t length) {
  if (cols(x) != 1 || offset + length > rows(x)) {
    throw std::out_of_range("tape: slice out of range");
  }
  Var v = Push(Op::kSlice, length, 1, {x}, offset);
  const double *in = ValuePtr(x.id) + offset;
  std::copy(in, in + length, MutableValue(v.id));
  return v;
}

Var Tape::Dot(Var a, Var b) {
  if (size(a) != size(b)) ShapeError("dot", rows(a), cols(a), rows(b), cols(b));
  Var v = Push(Op::kDot, 1, 1, {a, b});
  *MutableValue(v.id) = DotKernel(ValuePtr(a.id), ValuePtr(b.id), size(a));
  return v;
}

Var Tape::Max(std::span<const Var> scalars) {
  if (scalars.empty()) throw std::invalid_argument("tape: max of nothing");
  std::size_t best = 0;
  double best_value = Scalar(scalars[0]);
  for (std::size_t i = 1; i < scalars.size(); ++i) {
    double value = Scalar(scalars[i]);
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }
  Var v = PushN(Op::kMax, 1, 1, scalars, best);
  *MutableValue(v.id) = best_value;
  return v;
}

Var Tape::Stack(std::span<const Var> scalars) {
  if (scalars.empty()) throw std::invalid_argument("tape: empty stack");
  for (Var s : scalars) Scalar(s);
  Var v = PushN(Op::kStack, scalars.size(), 1, scalars);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0; i < scalars.size(); ++i) out[i] = Scalar(scalars[i]);
  return v;
}

Var Tape::StackRows(std::span<const Var> vectors) {
  if (vectors.empty()) throw std::invalid_argument("tape: empty stack");
  std::size_t d = size(vectors[0]);
  for (Var x : vectors) {
    if (size(x) != d) ShapeError("stack_rows", d, 1, rows(x), cols(x));
  }
  Var v = PushN(Op::kStackRows, vectors.size(), d, vectors);
  double *out = MutableValue(v.id);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double *x = ValuePtr(vectors[i].id);
    std::copy(x, x + d, out + i * d);
  }
  return v;
}

Var Tape::Softmax(Var x) {
  Var v = Push(Op::kSoftmax, rows(x), cols(x), {x});
  std::vector<double> y = nn::Softmax(Value(x));
  std::copy(y.begin(), y.end(), MutableValue(v.id));
  return v;
}

Var Tape::BinaryCrossEntropyWithLogit(Var logit, double label) {
  double z = Scalar(logit);
  Var v = Push(Op::kBceLogit, 1, 1, {logit}, 0, label);
  *MutableValue(v.id) = CrossEntropyWithLogit(z, label);
  return v;
}

std::span<double> Tape::GradOf(std::int32_t id, Gradients &grads) {
  const Node &n = nodes_[id];
  if (n.op == Op::kParam) return grads.Dense(n.aux);
  return {grads_.data() + n.offset, static_cast<std::size_t>(n.rows) * n.cols};
}

void Tape::Backward(Var root, Gradients &grads) {
  if (!root.valid() || size(root) != 1) {
    throw std::invalid_argument("backward: root must be a scalar node");
  }
  if (grads.size() != store_.size()) {
    throw std::invalid_argument("backward: gradient buffer does not match store");
  }
  grads_.assign(values_.size(), 0.0);
  if (node(root).op == Op::kParam) {
    grads.Dense(node(root).aux)[0] += 1.0;
    return;
  }
  grads_[node(root).offset] = 1.0;
  for (std::int32_t id = root.id; id >= 0; --id) {
    const Node &n = nodes_[id];
    if (n.op == Op::kConstant || n.op == Op::kParam) continue;
    BackwardNode(n, id, grads);
  }
}

void Tape::BackwardNode(const Node &n, std::int32_t id, Gradients &grads) {
  const double *g = grads_.data() + n.offset;
  const std::size_t count = static_cast<std::size_t>(n.rows) * n.cols;
  const double *y = values_.data() + n.offset;

  switch (n.op) {
    case Op::kRow: {
      Var m = Input(n, 0);
      const Node &src = node(m);
      std::span<double> dst =
          src.op == Op::kParam
              ? grads.Row(src.aux, n.aux)
              : std::span<double>(grads_.data() + src.offset + n.aux * src.cols,
                                  src.cols);
      for (std::size_t i = 0; i < count; ++i) dst[i] += g[i];
      break;
    }
    case Op::kMatVec: {
      Var a = Input(n, 0), x = Input(n, 1);
      std::size_t m = rows(a), k = cols(a);
      const double *av = ValuePtr(a.id);
      const double *xv = ValuePtr(x.id);
      std::span<double> da = GradOf(a.id, grads);
      for (std::size_t r = 0; r < m; ++r) {
        double gr = g[r];
        double *row = da.data() + r * k;
        for (std::size_t c = 0; c < k; ++c) row[c] += gr * xv[c];
      }
      std::span<double> dx = GradOf(x.id, grads);
      for (std::size_t r = 0; r < m; ++r) {
        double gr = g[r];
        const double *row = av + r * k;
        for (std::size_t c = 0; c < k; ++c) dx[c] += row[c] * gr;
      }
      break;
    }
    case Op::kMatTVec: {
      Var a = Input(n, 0), x = Input(n, 1);
      std::size_t m = rows(a), k = cols(a);
      const double *av = ValuePtr(a.id);
      const double *xv = ValuePtr(x.id);
      std::span<double> da = GradOf(a.id, grads);
      std::span<double> dx = GradOf(x.id, grads);
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          da[i * k + j] += xv[i] * g[j];
          acc += av[i * k + j] * g[j];
        }
        dx[i] += acc;
      }
      break;
    }
    case Op::kSum: {
      for (std::size_t k = 0; k < n.in_count; ++k) {
        std::span<double> dx = GradOf(Input(n, k).id, grads);
        for (std::size_t i = 0; i < count; ++i) dx[i] += g[i];
      }
      break;
    }
    case Op::kMul: {
      Var a = Input(n, 0), b = Input(n, 1);
      const double *av = ValuePtr(a.id);
      const double *bv = ValuePtr(b.id);
      std::span<double> da = GradOf(a.id, grads);
      for (std::size_t i = 0; i < count; ++i) da[i] += g[i] * bv[i];
      std::span<double> db = GradOf(b.id, grads);
      for (std::size_t i = 0; i < count; ++i) db[i] += g[i] * av[i];
      break;
    }
    case Op::kScale: {
      std::span<double> dx = GradOf(Input(n, 0).id, grads);
      for (std::size_t i = 0; i < count; ++i) dx[i] += g[i] * n.aux_value;
      break;
    }
    case Op::kSigmoid: {
      std::span<double> dx = GradOf(Input(n, 0).id, grads);
      for (std::size_t i = 0; i < count; ++i) dx[i] += g[i] * y[i] * (1.0 - y[i]);
      break;
    }
    case Op::kTanh: {
      std::span<double> dx = GradOf(Input(n, 0).id, grads);
      for (std::size_t i = 0; i < count; ++i) dx[i] += g[i] * (1.0 - y[i] * y[i]);
      break;
    }
    case Op::kSlice: {
      std::span<double> dx = GradOf(Input(n, 0).id, grads);
      for (std::size_t i = 0; i < count; ++i) dx[n.aux + i] += g[i];
      break;
    }
    case Op::kDot: {
      Var a = Input(n, 0), b = Input(n, 1);
      const double *av = ValuePtr(a.id);
      const double *bv = ValuePtr(b.id);
      std::size_t len = size(a);
      std::span<double> da = GradOf(a.id, grads);
      for (std::size_t i = 0; i < len; ++i) da[i] += g[0] * bv[i];
      std::span<double> db = GradOf(b.id, grads);
      for (std::size_t i = 0; i < len; ++i) db[i] += g[0] * av[i];
      break;
    }
    case Op::kMax: {
      GradOf(Input(n, n.aux).id, grads)[0] += g[0];
      break;
    }
    case Op::kStack: {
      for (std::size_t k = 0; k < n.in_count; ++k) {
        GradOf(Input(n, k).id, grads)[0] += g[k];
      }
      break;
    }
    case Op::kStackRows: {
      for (std::size_t k = 0; k < n.in_count; ++k) {
        std::span<double> dx = GradOf(Input(n, k).id, grads);
        for (std::size_t j = 0; j < n.cols; ++j) dx[j] += g[k * n.cols + j];
      }
      break;
    }
    case Op::kSoftmax: {
      double inner = 0.0;
      for (std::size_t i = 0; i < count; ++i) inner += g[i] * y[i];
      std::span<double> dx = GradOf(Input(n, 0).id, grads);
      for (std::size_t i = 0; i < count; ++i) dx[i] += y[i] * (g[i] - inner);
      break;
    }
    case Op::kBceLogit: {
      double z = Scalar(Input(n, 0));
      GradOf(Input(n, 0).id, grads)[0] += g[0] * (nn::Sigmoid(z) - n.aux_value);
      break;
    }
    case Op::kConstant:
    case Op::kParam:
      break;
  }
  (void)id;
}

}  // namespace kgdial::nn
