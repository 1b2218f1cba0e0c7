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

#ifndef KGDIAL_SERVICE_SERVICE_H_
#define KGDIAL_SERVICE_SERVICE_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/models/model.h"
#include "kgdial/text/vocabulary.h"

namespace kgdial {

inline constexpr std::size_t kMaxRankCandidates = 100;

struct HttpReply {
  int status = 200;
  std::string body;
};

// JSON handlers over an immutable vocabulary, index and model set. Every
// method is const and safe to call from concurrent request threads.
class RankService {
 public:
  RankService(Vocabulary vocab, KnowledgeIndex index,
              std::vector<std::pair<std::string, Model>> models);

  // GET /health
  HttpReply Health() const;
  // POST /rank with {"message", "candidates", "model"}.
  HttpReply Rank(const std::string &body) const;
  // GET /concepts?text=...
  HttpReply Concepts(const std::optional<std::string> &text) const;
  // GET /assertions/{concept}
  HttpReply Assertions(const std::string &concept_key) const;
  // GET /models
  HttpReply Models() const;

  const Model *FindModel(const std::string &id) const;

 private:
  Vocabulary vocab_;
  KnowledgeIndex index_;
  std::vector<std::pair<std::string, Model>> models_;
};

HttpReply ErrorReply(int status, const std::string &message);

// cpp-httplib front end for a RankService.
class HttpServer {
 public:
  explicit HttpServer(const RankService &service);
  ~HttpServer();

  // Throws std::runtime_error when the address cannot be bound. Port 0
  // picks a free port; the bound port is returned.
  int Bind(const std::string &host, int port);
  // Blocks until Stop().
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kgdial

#endif  // KGDIAL_SERVICE_SERVICE_H_
