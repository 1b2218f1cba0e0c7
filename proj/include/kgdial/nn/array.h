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

#ifndef KGDIAL_NN_ARRAY_H_
#define KGDIAL_NN_ARRAY_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kgdial::nn {

// Dense row-major array of doubles.
class Array {
 public:
  Array() = default;
  explicit Array(std::vector<std::size_t> shape);
  Array(std::vector<std::size_t> shape, std::vector<double> data);

  static Array Vector(std::vector<double> values);
  static Array Matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values);
  static Array Identity(std::size_t n);

  const std::vector<std::size_t> &shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  // Leading dimension (1 for scalars).
  std::size_t rows() const { return shape_.empty() ? 1 : shape_[0]; }
  // Product of the trailing dimensions.
  std::size_t cols() const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double &at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols(), cols());
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols(), cols());
  }

  void Fill(double value);
  bool AllFinite() const;
  std::string ShapeString() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// Exact bitwise equality of shape and every value.
bool BitwiseEqual(const Array &a, const Array &b);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_ARRAY_H_
