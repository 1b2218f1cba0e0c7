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

#ifndef KGDIAL_NN_TAPE_H_
#define KGDIAL_NN_TAPE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "kgdial/nn/array.h"
#include "kgdial/nn/parameter_store.h"

namespace kgdial::nn {

// Handle to a node recorded on a Tape.
struct Var {
  std::int32_t id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode automatic differentiation over matrices and column vectors.
// Every operation records a node; Backward() replays them in reverse and
// accumulates parameter gradients into a Gradients buffer. Parameters are
// read in place from the store, never copied.
//
// A tape is single-use and not thread-safe; build one per example.
class Tape {
 public:
  explicit Tape(const ParameterStore &store);

  // Leaves.
  Var Constant(std::span<const double> values, std::size_t rows,
               std::size_t cols = 1);
  Var Constant(const Array &value);
  Var Zeros(std::size_t rows, std::size_t cols = 1);
  Var Param(ParamId id);

  // Row `r` of a matrix as a column vector; on a parameter the gradient
  // lands in that row only.
  Var Row(Var matrix, std::size_t r);
  Var MatVec(Var matrix, Var vector);
  // matrix^T * vector.
  Var MatTVec(Var matrix, Var vector);
  Var Add(Var a, Var b);
  Var Sum(std::span<const Var> terms);
  Var Mul(Var a, Var b);
  Var Scale(Var x, double factor);
  Var Sigmoid(Var x);
  Var Tanh(Var x);
  Var Slice(Var x, std::size_t offset, std::size_t length);
  Var Dot(Var a, Var b);
  // Maximum of scalars; ties resolve to the lowest index. The gradient
  // flows only to the selected term.
  Var Max(std::span<const Var> scalars);
  // Scalars stacked into a column vector.
  Var Stack(std::span<const Var> scalars);
  // Column vectors stacked as the rows of a matrix.
  Var StackRows(std::span<const Var> vectors);
  Var Softmax(Var x);
  // Binary cross-entropy of sigmoid(logit) against a 0/1 label, computed
  // from the logit directly.
  Var BinaryCrossEntropyWithLogit(Var logit, double label);

  std::size_t rows(Var v) const { return nodes_[v.id].rows; }
  std::size_t cols(Var v) const { return nodes_[v.id].cols; }
  std::size_t size(Var v) const { return rows(v) * cols(v); }
  std::span<const double> Value(Var v) const;
  double Scalar(Var v) const;
  // Index selected by a Max node.
  std::size_t ArgMax(Var max_node) const;
  std::size_t num_nodes() const { return nodes_.size(); }

  // Seeds d(root)=1 and accumulates d(root)/d(param) into `grads`.
  // Throws std::invalid_argument unless root is 1x1.
  void Backward(Var root, Gradients &grads);

 private:
  enum class Op : std::uint8_t {
    kConstant,
    kParam,
    kRow,
    kMatVec,
    kMatTVec,
    kSum,
    kMul,
    kScale,
    kSigmoid,
    kTanh,
    kSlice,
    kDot,
    kMax,
    kStack,
    kStackRows,
    kSoftmax,
    kBceLogit,
  };

  struct Node {
    Op op;
    std::uint32_t rows;
    std::uint32_t cols;
    std::size_t offset;        // into values_/grads_ (unused for kParam)
    std::uint32_t in_begin;    // into operands_
    std::uint32_t in_count;
    std::size_t aux = 0;       // row / slice offset / argmax / param id
    double aux_value = 0.0;    // scale factor / label
  };

  Var Push(Op op, std::size_t rows, std::size_t cols,
           std::initializer_list<Var> inputs, std::size_t aux = 0,
           double aux_value = 0.0);
  Var PushN(Op op, std::size_t rows, std::size_t cols,
            std::span<const Var> inputs, std::size_t aux = 0);
  const Node &node(Var v) const { return nodes_[v.id]; }
  Var Input(const Node &n, std::size_t k) const {
    return Var{operands_[n.in_begin + k]};
  }
  const double *ValuePtr(std::int32_t id) const;
  double *MutableValue(std::int32_t id) { return values_.data() + nodes_[id].offset; }
  // Gradient buffer for node `id`: the tape arena, or the parameter's
  // buffer in `grads` (marked dense).
  std::span<double> GradOf(std::int32_t id, Gradients &grads);
  void BackwardNode(const Node &n, std::int32_t id, Gradients &grads);

  const ParameterStore &store_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> operands_;
  std::vector<double> values_;
  std::vector<double> grads_;
  std::unordered_map<ParamId, std::int32_t> param_nodes_;
};

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_TAPE_H_
