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

#ifndef KGDIAL_UTIL_HASH_H_
#define KGDIAL_UTIL_HASH_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace kgdial {

// 64-bit FNV-1a, used for config and vocabulary fingerprints that must be
// stable across runs and platforms.
class Fnv1a {
 public:
  void Update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      value_ ^= c;
      value_ *= 0x100000001b3ULL;
    }
  }
  void Update(std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    Update(std::string_view(buf, 8));
  }
  std::uint64_t value() const { return value_; }

 private:
  std::uint64_t value_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t HashString(std::string_view s) {
  Fnv1a h;
  h.Update(s);
  return h.value();
}

inline std::string HexString(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// SplitMix64 step; mixes (seed, stream) pairs into independent seeds.
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace kgdial

#endif  // KGDIAL_UTIL_HASH_H_
