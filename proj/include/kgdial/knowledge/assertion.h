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

#ifndef KGDIAL_KNOWLEDGE_ASSERTION_H_
#define KGDIAL_KNOWLEDGE_ASSERTION_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace kgdial {

using AssertionId = std::uint32_t;

// A commonsense triple <concept1, relation, concept2>. Concepts are
// lowercased words joined by single underscores ("go_shopping").
struct Assertion {
  std::string concept1;
  std::string relation;
  std::string concept2;
  double weight = 1.0;

  bool operator==(const Assertion &other) const = default;
};

// Renders "concept1, relation, concept2".
std::string ToString(const Assertion &assertion);

// The relation symbols accepted by default when parsing assertion dumps.
const std::vector<std::string> &DefaultRelations();

// Lowercases, collapses runs of underscores and strips leading/trailing
// underscores.
std::string NormalizeConcept(std::string_view concept_name);

// Splits a concept on underscores.
std::vector<std::string> ConceptWords(std::string_view concept_name);

struct ParseStats {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t malformed = 0;
  std::size_t unknown_relation = 0;
  std::size_t bad_characters = 0;

  std::size_t warnings() const {
    return malformed + unknown_relation + bad_characters;
  }
};

struct ParseResult {
  std::vector<Assertion> assertions;
  ParseStats stats;
};

// Reads the flat assertion TSV: "relation \t concept1 \t concept2 [\t weight]"
// with '#' comment lines. Bad lines are skipped and counted, never fatal.
ParseResult ParseAssertions(std::istream &in,
                            const std::vector<std::string> &relations);
ParseResult ParseAssertions(std::string_view text,
                            const std::vector<std::string> &relations);

// Writes assertions back in the TSV format read by ParseAssertions.
void WriteAssertions(std::ostream &out,
                     const std::vector<Assertion> &assertions);

}  // namespace kgdial

#endif  // KGDIAL_KNOWLEDGE_ASSERTION_H_
