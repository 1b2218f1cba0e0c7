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

#include "kgdial/knowledge/assertion.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <spdlog/spdlog.h>

namespace kgdial {

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool IsConceptChar(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u < 128 && std::isalnum(u)) || c == '_';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string ToString(const Assertion &assertion) {
  return assertion.concept1 + ", " + assertion.relation + ", " +
         assertion.concept2;
}

const std::vector<std::string> &DefaultRelations() {
  static const std::vector<std::string> relations = {
      "RelatedTo",   "FormOf",        "IsA",
      "PartOf",      "HasA",          "UsedFor",
      "CapableOf",   "AtLocation",    "Causes",
      "HasSubevent", "HasFirstSubevent", "HasLastSubevent",
      "HasPrerequisite", "HasProperty", "MotivatedByGoal",
      "ObstructedBy", "Desires",      "CreatedBy",
      "Synonym",     "Antonym",       "DistinctFrom",
      "DerivedFrom", "SymbolOf",      "DefinedAs",
      "MannerOf",    "LocatedNear",   "HasContext",
      "SimilarTo",   "CausesDesire",  "MadeOf",
      "ReceivesAction", "InstanceOf", "NotDesires",
      "NotUsedFor",  "NotCapableOf",  "NotHasProperty",
      "Entails",     "EtymologicallyRelatedTo",
  };
  return relations;
}

std::string NormalizeConcept(std::string_view concept_name) {
  std::string out;
  out.reserve(concept_name.size());
  for (char c : concept_name) {
    if (c == '_') {
      if (!out.empty() && out.back() != '_') out.push_back('_');
    } else {
      out.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::vector<std::string> ConceptWords(std::string_view concept_name) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= concept_name.size()) {
    std::size_t end = concept_name.find('_', start);
    if (end == std::string_view::npos) end = concept_name.size();
    if (end > start) words.emplace_back(concept_name.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

ParseResult ParseAssertions(std::istream &in,
                            const std::vector<std::string> &relations) {
  std::unordered_set<std::string> relation_set(relations.begin(),
                                               relations.end());
  ParseResult result;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    ++result.stats.lines;
    auto fields = SplitTabs(view);
    if (fields.size() < 3 || fields.size() > 4) {
      ++result.stats.malformed;
      continue;
    }
    Assertion a;
    a.relation = std::string(Trim(fields[0]));
    if (!relation_set.count(a.relation)) {
      ++result.stats.unknown_relation;
      continue;
    }
    std::string_view c1 = Trim(fields[1]);
    std::string_view c2 = Trim(fields[2]);
    if (!std::all_of(c1.begin(), c1.end(), IsConceptChar) ||
        !std::all_of(c2.begin(), c2.end(), IsConceptChar)) {
      ++result.stats.bad_characters;
      continue;
    }
    a.concept1 = NormalizeConcept(c1);
    a.concept2 = NormalizeConcept(c2);
    if (a.concept1.empty() || a.concept2.empty()) {
      ++result.stats.malformed;
      continue;
    }
    if (fields.size() == 4) {
      std::string_view w = Trim(fields[3]);
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), a.weight);
      if (ec != std::errc() || ptr != w.data() + w.size() ||
          !std::isfinite(a.weight) || a.weight < 0) {
        ++result.stats.malformed;
        continue;
      }
    }
    result.assertions.push_back(std::move(a));
    ++result.stats.accepted;
  }
  if (result.stats.warnings() > 0) {
    spdlog::warn(
        "assertion dump: skipped {} lines ({} malformed, {} unknown relation, "
        "{} non-alphanumeric)",
        result.stats.warnings(), result.stats.malformed,
        result.stats.unknown_relation, result.stats.bad_characters);
  }
  return result;
}

ParseResult ParseAssertions(std::string_view text,
                            const std::vector<std::string> &relations) {
  std::istringstream in{std::string(text)};
  return ParseAssertions(in, relations);
}

void WriteAssertions(std::ostream &out,
                     const std::vector<Assertion> &assertions) {
  char buf[64];
  for (const Assertion &a : assertions) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), a.weight);
    out << a.relation << '\t' << a.concept1 << '\t' << a.concept2 << '\t'
        << std::string_view(buf, end - buf) << '\n';
  }
}

}  // namespace kgdial
