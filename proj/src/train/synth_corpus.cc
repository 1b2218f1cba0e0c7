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

#include "kgdial/train/synth_corpus.h"

#include <cstdio>
#include <random>
#include <stdexcept>

namespace kgdial {

namespace {

std::string Numbered(const char *prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (const std::string &w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::string ConceptToken(std::size_t i) { return Numbered("cpt", i); }
std::string SignalToken(std::size_t i) { return Numbered("sig", i); }
std::string FillerToken(std::size_t i) { return Numbered("w", i); }

void SynthConfig::Validate() const {
  if (n_pairs == 0 || n_concepts == 0 || signals_per_concept == 0 ||
      filler_vocab == 0) {
    throw std::invalid_argument("synth corpus: sizes must be positive");
  }
  if (!(noise_rate >= 0 && noise_rate < 1)) {
    throw std::invalid_argument("synth corpus: noise_rate must be in [0, 1)");
  }
  if (noise_rate > 0 && n_concepts < 2) {
    throw std::invalid_argument(
        "synth corpus: noisy links need at least two concepts");
  }
  if (relations.empty()) {
    throw std::invalid_argument("synth corpus: no relations");
  }
}

SynthCorpus GenerateSynthCorpus(const SynthConfig &config) {
  config.Validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> relation(
      0, config.relations.size() - 1);
  std::uniform_int_distribution<std::size_t> concept_pick(
      0, config.n_concepts - 1);
  std::uniform_int_distribution<std::size_t> signal_pick(
      0, config.signals_per_concept - 1);
  std::uniform_int_distribution<std::size_t> filler_pick(
      0, config.filler_vocab - 1);
  const std::size_t m = config.signals_per_concept;

  SynthCorpus corpus;
  for (std::size_t c = 0; c < config.n_concepts; ++c) {
    const std::string cpt = ConceptToken(c);
    std::vector<std::string> &owned = corpus.signals[cpt];
    for (std::size_t s = 0; s < m; ++s) {
      owned.push_back(SignalToken(c * m + s));
      std::string target = owned.back();
      if (unit(rng) < config.noise_rate) {
        std::size_t other = concept_pick(rng);
        while (other == c) other = concept_pick(rng);
        target = SignalToken(other * m + signal_pick(rng));
      }
      corpus.assertions.push_back(
          {cpt, config.relations[relation(rng)], target, 1.0});
    }
  }

  auto utterance = [&](std::size_t fillers, const std::string &planted) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < fillers; ++i) {
      words.push_back(FillerToken(filler_pick(rng)));
    }
    std::uniform_int_distribution<std::size_t> at(0, words.size());
    words.insert(words.begin() + static_cast<long>(at(rng)), planted);
    return JoinWords(words);
  };
  corpus.pairs.reserve(config.n_pairs);
  for (std::size_t p = 0; p < config.n_pairs; ++p) {
    std::size_t c = concept_pick(rng);
    std::size_t s = signal_pick(rng);
    DialoguePair pair;
    pair.message = utterance(config.message_fillers, ConceptToken(c));
    pair.response = utterance(config.response_fillers, SignalToken(c * m + s));
    pair.group = ConceptToken(c);
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

}  // namespace kgdial
