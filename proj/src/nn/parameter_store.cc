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

#include "kgdial/nn/parameter_store.h"

#include <cmath>
#include <stdexcept>

namespace kgdial::nn {

ParamId ParameterStore::Add(std::string name, Array value) {
  if (Find(name)) throw std::invalid_argument("duplicate parameter: " + name);
  entries_.push_back({std::move(name), std::move(value)});
  return entries_.size() - 1;
}

std::optional<ParamId> ParameterStore::Find(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

ParamId ParameterStore::IdOf(std::string_view name) const {
  auto id = Find(name);
  if (!id) throw std::out_of_range("missing parameter: " + std::string(name));
  return *id;
}

std::size_t ParameterStore::total_size() const {
  std::size_t n = 0;
  for (const Entry &e : entries_) n += e.value.size();
  return n;
}

double &ParameterStore::Coordinate(std::size_t flat_index) {
  for (Entry &e : entries_) {
    if (flat_index < e.value.size()) return e.value[flat_index];
    flat_index -= e.value.size();
  }
  throw std::out_of_range("coordinate out of range");
}

bool BitwiseEqual(const ParameterStore &a, const ParameterStore &b) {
  if (a.size() != b.size() || a.seed() != b.seed()) return false;
  for (ParamId i = 0; i < a.size(); ++i) {
    if (a.name(i) != b.name(i) || !BitwiseEqual(a.value(i), b.value(i))) {
      return false;
    }
  }
  return true;
}

Gradients::Gradients(const ParameterStore &store) {
  grads_.reserve(store.size());
  usage_.resize(store.size());
  for (ParamId i = 0; i < store.size(); ++i) {
    grads_.emplace_back(store.value(i).shape());
    usage_[i].row_marked.assign(store.value(i).rows(), 0);
  }
}

std::span<double> Gradients::Dense(ParamId id) {
  usage_[id].dense = true;
  return grads_[id].data();
}

std::span<double> Gradients::Row(ParamId id, std::size_t row) {
  Usage &u = usage_[id];
  if (!u.dense && !u.row_marked[row]) {
    u.row_marked[row] = 1;
    u.rows.push_back(row);
  }
  return grads_[id].row(row);
}

template <typename Fn>
void Gradients::ForEachWritten(ParamId id, Fn &&fn) const {
  const Usage &u = usage_[id];
  const Array &g = grads_[id];
  if (u.dense) {
    fn(std::size_t{0}, g.size());
  } else {
    for (std::size_t r : u.rows) fn(r * g.cols(), g.cols());
  }
}

void Gradients::Clear() {
  for (ParamId id = 0; id < grads_.size(); ++id) {
    Array &g = grads_[id];
    ForEachWritten(id, [&](std::size_t begin, std::size_t count) {
      std::fill_n(g.data().begin() + begin, count, 0.0);
    });
    Usage &u = usage_[id];
    u.dense = false;
    for (std::size_t r : u.rows) u.row_marked[r] = 0;
    u.rows.clear();
  }
}

void Gradients::Accumulate(const Gradients &other) {
  for (ParamId id = 0; id < grads_.size(); ++id) {
    const Usage &theirs = other.usage_[id];
    const Array &src = other.grads_[id];
    if (theirs.dense) {
      std::span<double> dst = Dense(id);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    } else {
      for (std::size_t r : theirs.rows) {
        std::span<double> dst = Row(id, r);
        std::span<const double> s = src.row(r);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s[i];
      }
    }
  }
}

void Gradients::Scale(double factor) {
  for (ParamId id = 0; id < grads_.size(); ++id) {
    Array &g = grads_[id];
    ForEachWritten(id, [&](std::size_t begin, std::size_t count) {
      for (std::size_t i = begin; i < begin + count; ++i) g[i] *= factor;
    });
  }
}

double Gradients::SquaredNorm() const {
  double total = 0;
  for (ParamId id = 0; id < grads_.size(); ++id) {
    const Array &g = grads_[id];
    ForEachWritten(id, [&](std::size_t begin, std::size_t count) {
      for (std::size_t i = begin; i < begin + count; ++i) total += g[i] * g[i];
    });
  }
  return total;
}

std::optional<ParamId> Gradients::FirstNonFinite() const {
  for (ParamId id = 0; id < grads_.size(); ++id) {
    if (!grads_[id].AllFinite()) return id;
  }
  return std::nullopt;
}

}  // namespace kgdial::nn
