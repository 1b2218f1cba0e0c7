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

#include "kgdial/train/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kgdial/text/normalize.h"

namespace kgdial {

namespace {

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string Sanitize(const std::string &text) {
  std::string out = text;
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

TokenSequence Reencode(const std::string &text, const Vocabulary &vocab) {
  return vocab.Encode(Tokenize(text));
}

}  // namespace

std::vector<DialoguePair> ReadPairs(std::istream &in) {
  std::vector<DialoguePair> pairs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw std::runtime_error("pairs line " + std::to_string(number) +
                               ": expected message<TAB>response[<TAB>group]");
    }
    pairs.push_back({fields[0], fields[1], fields.size() == 3 ? fields[2] : ""});
  }
  return pairs;
}

std::vector<DialoguePair> ReadPairsFile(const std::string &path) {
  auto in = OpenIn(path);
  return ReadPairs(in);
}

void WritePairs(std::ostream &out, const std::vector<DialoguePair> &pairs) {
  for (const DialoguePair &p : pairs) {
    out << Sanitize(p.message) << '\t' << Sanitize(p.response);
    if (!p.group.empty()) out << '\t' << Sanitize(p.group);
    out << '\n';
  }
}

void WritePairsFile(const std::string &path,
                    const std::vector<DialoguePair> &pairs) {
  auto out = OpenOut(path);
  WritePairs(out, pairs);
}

void WriteInstances(std::ostream &out,
                    const std::vector<EvalInstance> &instances) {
  for (const EvalInstance &inst : instances) {
    nlohmann::ordered_json j;
    j["id"] = inst.id;
    j["message"] = JoinTokens(inst.message.tokens);
    j["ground_truth"] = JoinTokens(inst.ground_truth().tokens);
    nlohmann::json distractors = nlohmann::json::array();
    for (const TokenSequence &d : inst.distractors()) {
      distractors.push_back(JoinTokens(d.tokens));
    }
    j["distractors"] = std::move(distractors);
    j["ground_truth_slot"] = inst.ground_truth_slot;
    j["group"] = inst.group;
    out << j.dump() << '\n';
  }
}

void WriteInstancesFile(const std::string &path,
                        const std::vector<EvalInstance> &instances) {
  auto out = OpenOut(path);
  WriteInstances(out, instances);
}

std::vector<EvalInstance> ReadInstances(std::istream &in,
                                        const Vocabulary &vocab,
                                        const KnowledgeIndex *index) {
  std::vector<EvalInstance> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      EvalInstance inst;
      inst.id = j.at("id").get<std::string>();
      inst.message = Reencode(j.at("message").get<std::string>(), vocab);
      auto distractors = j.at("distractors").get<std::vector<std::string>>();
      inst.ground_truth_slot = j.at("ground_truth_slot").get<std::size_t>();
      if (inst.ground_truth_slot > distractors.size()) {
        throw std::runtime_error("ground_truth_slot out of range");
      }
      inst.group = j.value("group", std::string());
      std::size_t next = 0;
      for (std::size_t c = 0; c <= distractors.size(); ++c) {
        inst.candidates.push_back(
            c == inst.ground_truth_slot
                ? Reencode(j.at("ground_truth").get<std::string>(), vocab)
                : Reencode(distractors[next++], vocab));
      }
      if (index) AttachRetrieval(inst, *index, vocab);
      out.push_back(std::move(inst));
    } catch (const std::exception &e) {
      throw std::runtime_error("instances line " + std::to_string(number) +
                               ": " + e.what());
    }
  }
  return out;
}

std::vector<EvalInstance> ReadInstancesFile(const std::string &path,
                                            const Vocabulary &vocab,
                                            const KnowledgeIndex *index) {
  auto in = OpenIn(path);
  return ReadInstances(in, vocab, index);
}

void WriteTextFile(const std::string &path, const std::string &contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto out = OpenOut(path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ReadTextFile(const std::string &path) {
  auto in = OpenIn(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace kgdial
