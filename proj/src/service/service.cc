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

#include "kgdial/service/service.h"

#include <chrono>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "kgdial/knowledge/assertion.h"
#include "kgdial/text/normalize.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

using Json = nlohmann::ordered_json;

HttpReply JsonReply(int status, const Json &body) {
  return {status, body.dump()};
}

Json AssertionJson(const Assertion &a) {
  Json j;
  j["concept1"] = a.concept1;
  j["relation"] = a.relation;
  j["concept2"] = a.concept2;
  j["text"] = "(" + ToString(a) + ")";
  return j;
}

Json MatchedConcepts(const KnowledgeIndex &index, const RetrievedSet &set) {
  Json out = Json::array();
  for (const ConceptMatch &m : set.matched_concepts) {
    Json c;
    c["concept"] = m.key;
    c["position"] = m.position;
    c["assertions"] = index.Lookup(m.key).size();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

HttpReply ErrorReply(int status, const std::string &message) {
  Json j;
  j["error"] = {{"status", status}, {"message", message}};
  return JsonReply(status, j);
}

RankService::RankService(Vocabulary vocab, KnowledgeIndex index,
                         std::vector<std::pair<std::string, Model>> models)
    : vocab_(std::move(vocab)),
      index_(std::move(index)),
      models_(std::move(models)) {
  for (const auto &[id, model] : models_) {
    if (model.config().vocab_size != static_cast<std::size_t>(vocab_.size())) {
      throw std::invalid_argument("model " + id +
                                  " was trained on a different vocabulary");
    }
  }
}

const Model *RankService::FindModel(const std::string &id) const {
  for (const auto &[name, model] : models_) {
    if (name == id) return &model;
  }
  return nullptr;
}

HttpReply RankService::Health() const {
  return JsonReply(200, Json{{"status", "ok"}});
}

HttpReply RankService::Rank(const std::string &body) const {
  auto start = std::chrono::steady_clock::now();
  Json request;
  try {
    request = Json::parse(body);
  } catch (const std::exception &e) {
    return ErrorReply(400, std::string("malformed JSON: ") + e.what());
  }
  if (!request.is_object()) return ErrorReply(400, "body must be an object");
  if (!request.contains("message") || !request["message"].is_string()) {
    return ErrorReply(400, "field 'message' must be a string");
  }
  if (!request.contains("candidates") || !request["candidates"].is_array()) {
    return ErrorReply(400, "field 'candidates' must be an array of strings");
  }
  if (!request.contains("model") || !request["model"].is_string()) {
    return ErrorReply(400, "field 'model' must be a string");
  }
  const Json &cands = request["candidates"];
  if (cands.empty() || cands.size() > kMaxRankCandidates) {
    return ErrorReply(400, "'candidates' must hold 1 to " +
                               std::to_string(kMaxRankCandidates) + " strings");
  }
  std::vector<std::string> texts;
  for (const Json &c : cands) {
    if (!c.is_string()) return ErrorReply(400, "candidates must be strings");
    texts.push_back(c.get<std::string>());
  }
  const std::string model_id = request["model"].get<std::string>();
  const Model *model = FindModel(model_id);
  if (!model) return ErrorReply(404, "unknown model '" + model_id + "'");

  std::vector<std::string> tokens =
      NormalizeAndTokenize(request["message"].get<std::string>());
  TokenSequence message = vocab_.Encode(tokens);
  RetrievedSet retrieved = index_.Retrieve(tokens);
  Memory memory;
  if (UsesKnowledge(model->kind())) {
    memory = BuildMemory(index_, vocab_, retrieved);
  }
  std::vector<std::vector<int>> candidates;
  for (const std::string &t : texts) {
    candidates.push_back(vocab_.Encode(NormalizeAndTokenize(t)).ids);
  }
  std::vector<ScoredCandidate> ranked = kgdial::Rank(
      model->ScoreCandidates(message.ids, memory, candidates));

  Json out;
  out["model"] = model_id;
  out["score_kind"] = std::string(model->score_kind());
  out["matched_concepts"] = MatchedConcepts(index_, retrieved);
  out["assertion_count"] = retrieved.size();
  Json list = Json::array();
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const ScoredCandidate &c = ranked[r];
    Json item;
    item["index"] = c.index;
    item["text"] = texts[c.index];
    item["score"] = c.score;
    item["rank"] = r + 1;
    if (c.activated_assertion) {
      item["activated_assertion"] =
          AssertionJson(index_.assertion(*c.activated_assertion));
    }
    list.push_back(std::move(item));
  }
  out["candidates"] = std::move(list);
  out["latency_ms"] = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return JsonReply(200, out);
}

HttpReply RankService::Concepts(const std::optional<std::string> &text) const {
  if (!text) return ErrorReply(400, "missing query parameter 'text'");
  std::vector<std::string> tokens = NormalizeAndTokenize(*text);
  RetrievedSet retrieved = index_.Retrieve(tokens);
  Json out;
  out["tokens"] = tokens;
  out["concepts"] = MatchedConcepts(index_, retrieved);
  out["assertion_count"] = retrieved.size();
  return JsonReply(200, out);
}

HttpReply RankService::Assertions(const std::string &concept_key) const {
  std::string key = NormalizeConcept(concept_key);
  if (!index_.HasKey(key)) {
    return ErrorReply(404, "unknown concept '" + concept_key + "'");
  }
  Json list = Json::array();
  for (AssertionId id : index_.Lookup(key)) {
    Json a = AssertionJson(index_.assertion(id));
    a["id"] = id;
    a["weight"] = index_.assertion(id).weight;
    list.push_back(std::move(a));
  }
  Json out;
  out["concept"] = key;
  out["assertions"] = std::move(list);
  return JsonReply(200, out);
}

HttpReply RankService::Models() const {
  Json list = Json::array();
  for (const auto &[id, model] : models_) {
    Json m;
    m["id"] = id;
    m["kind"] = std::string(ModelKindName(model.kind()));
    m["config_hash"] = HexString(model.config().Hash());
    m["score_kind"] = std::string(model.score_kind());
    list.push_back(std::move(m));
  }
  return JsonReply(200, Json{{"models", std::move(list)}});
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const RankService &service)
    : impl_(std::make_unique<Impl>()) {
  auto send = [](httplib::Response &res, const HttpReply &reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };
  httplib::Server &s = impl_->server;
  s.Get("/health", [&service, send](const httplib::Request &,
                                    httplib::Response &res) {
    send(res, service.Health());
  });
  s.Get("/models", [&service, send](const httplib::Request &,
                                    httplib::Response &res) {
    send(res, service.Models());
  });
  s.Get("/concepts", [&service, send](const httplib::Request &req,
                                      httplib::Response &res) {
    std::optional<std::string> text;
    if (req.has_param("text")) text = req.get_param_value("text");
    send(res, service.Concepts(text));
  });
  s.Get(R"(/assertions/([^/]+))", [&service, send](const httplib::Request &req,
                                                    httplib::Response &res) {
    send(res, service.Assertions(req.matches[1]));
  });
  s.Post("/rank", [&service, send](const httplib::Request &req,
                                   httplib::Response &res) {
    send(res, service.Rank(req.body));
  });
  s.set_error_handler([send](const httplib::Request &, httplib::Response &res) {
    if (res.body.empty()) {
      send(res, ErrorReply(res.status, "no such endpoint"));
    }
  });
  s.set_exception_handler([send](const httplib::Request &,
                                 httplib::Response &res,
                                 std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      what = e.what();
    } catch (...) {
    }
    send(res, ErrorReply(500, what));
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::Bind(const std::string &host, int port) {
  if (port == 0) {
    int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" +
                             std::to_string(port));
  }
  return port;
}

void HttpServer::Listen() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace kgdial
