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

#include "kgdial/nn/checkpoint.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "kgdial/util/hash.h"

namespace kgdial::nn {

namespace {

constexpr char kMagic[8] = {'K', 'G', 'D', 'C', 'K', 'P', 'T', '1'};
constexpr char kFooter[8] = {'K', 'G', 'D', 'E', 'N', 'D', '\0', '\0'};
constexpr std::uint8_t kDtypeF64 = 1;

template <typename T>
void Put(std::ostream &out, T value) {
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

void PutString(std::ostream &out, const std::string &s) {
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void ReadExact(std::istream &in, char *dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw std::runtime_error("checkpoint: truncated file");
  }
}

template <typename T>
T Get(std::istream &in) {
  T value;
  ReadExact(in, reinterpret_cast<char *>(&value), sizeof(T));
  return value;
}

std::string GetString(std::istream &in, std::size_t limit) {
  auto n = Get<std::uint32_t>(in);
  if (n > limit) throw std::runtime_error("checkpoint: corrupt string length");
  std::string s(n, '\0');
  ReadExact(in, s.data(), n);
  return s;
}

}  // namespace

void SaveCheckpoint(std::ostream &out, const std::string &config_text,
                    const ParameterStore &params) {
  out.write(kMagic, sizeof(kMagic));
  Put<std::uint32_t>(out, kCheckpointVersion);
  Put<std::uint64_t>(out, HashString(config_text));
  Put<std::uint64_t>(out, params.seed());
  PutString(out, config_text);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (ParamId id = 0; id < params.size(); ++id) {
    const Array &value = params.value(id);
    PutString(out, params.name(id));
    Put<std::uint8_t>(out, kDtypeF64);
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(value.rank()));
    for (std::size_t d : value.shape()) Put<std::uint64_t>(out, d);
    out.write(reinterpret_cast<const char *>(value.data().data()),
              static_cast<std::streamsize>(value.size() * sizeof(double)));
  }
  out.write(kFooter, sizeof(kFooter));
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

void SaveCheckpointFile(const std::string &path, const std::string &config_text,
                        const ParameterStore &params) {
  // Written to a temporary file and renamed into place.
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    SaveCheckpoint(out, config_text, params);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(std::istream &in) {
  char magic[8];
  ReadExact(in, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  auto version = Get<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: format version " +
                             std::to_string(version) + " (expected " +
                             std::to_string(kCheckpointVersion) + ")");
  }
  Checkpoint ckpt;
  ckpt.config_hash = Get<std::uint64_t>(in);
  ckpt.params.set_seed(Get<std::uint64_t>(in));
  ckpt.config_text = GetString(in, 1u << 20);
  if (HashString(ckpt.config_text) != ckpt.config_hash) {
    throw std::runtime_error("checkpoint: config hash mismatch");
  }
  auto count = Get<std::uint32_t>(in);
  for (std::uint32_t p = 0; p < count; ++p) {
    std::string name = GetString(in, 4096);
    if (Get<std::uint8_t>(in) != kDtypeF64) {
      throw std::runtime_error("checkpoint: unsupported dtype for " + name);
    }
    auto rank = Get<std::uint32_t>(in);
    if (rank > 8) throw std::runtime_error("checkpoint: corrupt rank for " + name);
    std::vector<std::size_t> shape(rank);
    std::size_t total = 1;
    for (auto &d : shape) {
      d = static_cast<std::size_t>(Get<std::uint64_t>(in));
      if (d > (std::size_t{1} << 32)) {
        throw std::runtime_error("checkpoint: corrupt shape for " + name);
      }
      total *= d;
    }
    std::vector<double> data(total);
    ReadExact(in, reinterpret_cast<char *>(data.data()), total * sizeof(double));
    ckpt.params.Add(std::move(name), Array(std::move(shape), std::move(data)));
  }
  char footer[8];
  ReadExact(in, footer, sizeof(footer));
  if (std::memcmp(footer, kFooter, sizeof(footer)) != 0) {
    throw std::runtime_error("checkpoint: missing footer");
  }
  return ckpt;
}

Checkpoint LoadCheckpointFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  return LoadCheckpoint(in);
}

}  // namespace kgdial::nn
