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

#ifndef KGDIAL_NN_PARAMETER_STORE_H_
#define KGDIAL_NN_PARAMETER_STORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgdial/nn/array.h"

namespace kgdial::nn {

using ParamId = std::size_t;

// Named trainable arrays in insertion order. Shapes are fixed once added.
class ParameterStore {
 public:
  ParamId Add(std::string name, Array value);

  std::optional<ParamId> Find(std::string_view name) const;
  // Throws std::out_of_range naming the missing parameter.
  ParamId IdOf(std::string_view name) const;

  std::size_t size() const { return entries_.size(); }
  const std::string &name(ParamId id) const { return entries_.at(id).name; }
  const Array &value(ParamId id) const { return entries_.at(id).value; }
  Array &mutable_value(ParamId id) { return entries_.at(id).value; }
  const Array &operator[](std::string_view name) const {
    return value(IdOf(name));
  }
  std::size_t total_size() const;

  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  // Flat coordinate access across all parameters, used by the gradient
  // checker.
  double &Coordinate(std::size_t flat_index);

 private:
  struct Entry {
    std::string name;
    Array value;
  };
  std::vector<Entry> entries_;
  std::uint64_t seed_ = 0;
};

bool BitwiseEqual(const ParameterStore &a, const ParameterStore &b);

// Gradient buffers shaped like a ParameterStore. Tracks which parameters
// (or which rows of them) were written so clearing and accumulation only
// touch those parts; embedding tables stay cheap per example.
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ParameterStore &store);

  std::size_t size() const { return grads_.size(); }
  const Array &operator[](ParamId id) const { return grads_.at(id); }

  // Marks the whole parameter written and returns its buffer.
  std::span<double> Dense(ParamId id);
  // Marks one row written and returns it.
  std::span<double> Row(ParamId id, std::size_t row);

  void Clear();
  // this += other, restricted to the parts `other` wrote.
  void Accumulate(const Gradients &other);
  void Scale(double factor);
  double SquaredNorm() const;
  // First parameter holding a NaN or infinity.
  std::optional<ParamId> FirstNonFinite() const;

 private:
  struct Usage {
    bool dense = false;
    std::vector<std::uint8_t> row_marked;
    std::vector<std::size_t> rows;
  };
  template <typename Fn>
  void ForEachWritten(ParamId id, Fn &&fn) const;

  std::vector<Array> grads_;
  std::vector<Usage> usage_;
};

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_PARAMETER_STORE_H_
