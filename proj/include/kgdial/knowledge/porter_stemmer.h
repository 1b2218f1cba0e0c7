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

#ifndef KGDIAL_KNOWLEDGE_PORTER_STEMMER_H_
#define KGDIAL_KNOWLEDGE_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace kgdial {

// The original (1980) Porter suffix-stripping algorithm. Expects a lowercase
// word; words of length <= 2 and words containing non-letters other than
// digits are processed byte-wise (digits count as consonants).
std::string PorterStem(std::string_view word);

}  // namespace kgdial

#endif  // KGDIAL_KNOWLEDGE_PORTER_STEMMER_H_
