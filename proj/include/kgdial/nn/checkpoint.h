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

#ifndef KGDIAL_NN_CHECKPOINT_H_
#define KGDIAL_NN_CHECKPOINT_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "kgdial/nn/parameter_store.h"

namespace kgdial::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// A parameter snapshot plus the resolved configuration that produced it.
struct Checkpoint {
  std::string config_text;
  std::uint64_t config_hash = 0;
  ParameterStore params;
};

// Binary layout (little-endian):
//   "KGDCKPT1" u32 version u64 config_hash u64 seed
//   u32 len, config text
//   u32 count, then per parameter:
//     u32 len, name, u8 dtype (1 = f64), u32 rank, u64 dims[rank], f64 data
//   "KGDEND\0\0"
void SaveCheckpoint(std::ostream &out, const std::string &config_text,
                    const ParameterStore &params);
void SaveCheckpointFile(const std::string &path, const std::string &config_text,
                        const ParameterStore &params);

// Throws std::runtime_error on a bad magic, version mismatch, truncated
// data, or a config hash that does not match the stored config text.
Checkpoint LoadCheckpoint(std::istream &in);
Checkpoint LoadCheckpointFile(const std::string &path);

}  // namespace kgdial::nn

#endif  // KGDIAL_NN_CHECKPOINT_H_
