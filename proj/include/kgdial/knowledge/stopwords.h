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

#ifndef KGDIAL_KNOWLEDGE_STOPWORDS_H_
#define KGDIAL_KNOWLEDGE_STOPWORDS_H_

#include <set>
#include <string>

namespace kgdial {

using StopwordSet = std::set<std::string>;

// Version tag of the built-in list. Bump when the list changes.
inline constexpr int kStopwordListVersion = 1;

// English function words excluded as unigram concept keys.
const StopwordSet &DefaultStopwords();

// Reads one word per line ('#' comments allowed).
StopwordSet LoadStopwords(const std::string &path);

}  // namespace kgdial

#endif  // KGDIAL_KNOWLEDGE_STOPWORDS_H_
