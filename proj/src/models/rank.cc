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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgdial/models/model.h"

namespace kgdial {

std::vector<ScoredCandidate> Rank(std::vector<ScoredCandidate> scored) {
  if (scored.empty()) throw std::invalid_argument("rank: no candidates");
  std::sort(scored.begin(), scored.end(),
            [](const ScoredCandidate &a, const ScoredCandidate &b) {
              bool a_nan = std::isnan(a.logit), b_nan = std::isnan(b.logit);
              if (a_nan != b_nan) return b_nan;
              if (!a_nan && a.logit != b.logit) return a.logit > b.logit;
              return a.index < b.index;
            });
  return scored;
}

}  // namespace kgdial
