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

#include "kgdial/service/cli.h"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgdial/knowledge/assertion.h"
#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/knowledge/stopwords.h"
#include "kgdial/models/gradient_fixture.h"
#include "kgdial/models/model.h"
#include "kgdial/service/service.h"
#include "kgdial/text/normalize.h"
#include "kgdial/text/vocabulary.h"
#include "kgdial/train/case_report.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/evaluate.h"
#include "kgdial/train/io.h"
#include "kgdial/train/synth_corpus.h"
#include "kgdial/train/trainer.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

namespace fs = std::filesystem;

// Raised for a required input file that does not exist.
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flag {
  std::string name;
  std::string default_value;
  std::string help;
};

using Action = int (*)(const Settings &, std::ostream &, std::ostream &);

struct Command {
  std::string name;
  std::string help;
  std::vector<Flag> flags;
  Action run;
};

std::string InputPath(const Settings &s, const std::string &key) {
  std::string path = s.GetString(key);
  if (path.empty()) {
    throw std::invalid_argument("missing required setting --" + key);
  }
  if (!fs::exists(path)) throw MissingInput("no such file: " + path);
  return path;
}

std::string OutputPath(const Settings &s, const std::string &key) {
  std::string path = s.GetString(key);
  if (path.empty()) {
    throw std::invalid_argument("missing required setting --" + key);
  }
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return path;
}

std::optional<std::string> OptionalInput(const Settings &s,
                                         const std::string &key) {
  std::string path = s.GetString(key, "");
  if (path.empty()) return std::nullopt;
  if (!fs::exists(path)) throw MissingInput("no such file: " + path);
  return path;
}

std::vector<std::size_t> ParseKs(const std::string &text) {
  std::vector<std::size_t> ks;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) continue;
    std::size_t pos = 0;
    long long v = std::stoll(part, &pos);
    if (pos != part.size() || v < 1) {
      throw std::invalid_argument("--k expects positive integers, got " + part);
    }
    ks.push_back(static_cast<std::size_t>(v));
  }
  if (ks.empty()) throw std::invalid_argument("--k is empty");
  return ks;
}

ModelKind RequireKind(const Settings &s) {
  std::string name = s.GetString("model");
  auto kind = ParseModelKind(name);
  if (!kind) throw std::invalid_argument("unknown model kind '" + name + "'");
  return *kind;
}

void ApplyThreads(const Settings &s) {
  std::int64_t threads = s.GetInt("threads");
  if (threads > 0) omp_set_num_threads(static_cast<int>(threads));
}

StopwordSet StopwordsFrom(const Settings &s) {
  if (auto path = OptionalInput(s, "stopwords")) return LoadStopwords(*path);
  return DefaultStopwords();
}

KnowledgeIndex LoadIndex(const Settings &s) {
  return KnowledgeIndex::LoadFile(InputPath(s, "index"));
}

Vocabulary LoadVocab(const Settings &s) {
  return Vocabulary::LoadFile(InputPath(s, "vocab"));
}

// --- subcommands -----------------------------------------------------------

int RunSynthCorpus(const Settings &s, std::ostream &out, std::ostream &) {
  SynthConfig config;
  config.n_pairs = s.GetUnsigned("n-pairs");
  config.n_concepts = s.GetUnsigned("n-concepts");
  config.signals_per_concept = s.GetUnsigned("signals");
  config.filler_vocab = s.GetUnsigned("fillers");
  config.message_fillers = s.GetUnsigned("message-fillers");
  config.response_fillers = s.GetUnsigned("response-fillers");
  config.noise_rate = s.GetDouble("noise");
  config.seed = s.GetUnsigned("seed");
  const std::size_t n_valid = s.GetUnsigned("valid");
  const std::size_t n_test = s.GetUnsigned("test");
  if (n_valid + n_test >= config.n_pairs) {
    throw std::invalid_argument("valid + test must leave training pairs");
  }
  SynthCorpus corpus = GenerateSynthCorpus(config);
  fs::path dir = s.GetString("out-dir");
  fs::create_directories(dir);
  const std::size_t n_train = config.n_pairs - n_valid - n_test;
  auto slice = [&](std::size_t begin, std::size_t end) {
    return std::vector<DialoguePair>(corpus.pairs.begin() + begin,
                                     corpus.pairs.begin() + end);
  };
  WritePairsFile((dir / "train.tsv").string(), slice(0, n_train));
  WritePairsFile((dir / "valid.tsv").string(),
                 slice(n_train, n_train + n_valid));
  WritePairsFile((dir / "test.tsv").string(),
                 slice(n_train + n_valid, config.n_pairs));
  std::ofstream kb(dir / "assertions.tsv", std::ios::binary);
  WriteAssertions(kb, corpus.assertions);
  out << "wrote " << n_train << " train, " << n_valid << " valid, " << n_test
      << " test pairs and " << corpus.assertions.size() << " assertions to "
      << dir.string() << '\n';
  return kExitOk;
}

int RunBuildVocab(const Settings &s, std::ostream &out, std::ostream &) {
  std::vector<std::vector<std::string>> corpus;
  for (const DialoguePair &p : ReadPairsFile(InputPath(s, "pairs"))) {
    corpus.push_back(NormalizeAndTokenize(p.message));
    corpus.push_back(NormalizeAndTokenize(p.response));
  }
  if (auto kb = OptionalInput(s, "assertions")) {
    std::ifstream in(*kb);
    for (const Assertion &a : ParseAssertions(in, DefaultRelations()).assertions) {
      std::vector<std::string> words = ConceptWords(a.concept1);
      for (std::string &w : ConceptWords(a.concept2)) words.push_back(w);
      corpus.push_back(std::move(words));
    }
  }
  Vocabulary vocab = Vocabulary::Build(
      corpus, static_cast<int>(s.GetInt("min-freq")), DefaultRelations());
  vocab.SaveFile(OutputPath(s, "vocab"));
  out << "vocabulary: " << vocab.size() << " tokens (fingerprint "
      << HexString(vocab.Fingerprint()) << ")\n";
  return kExitOk;
}

int RunBuildIndex(const Settings &s, std::ostream &out, std::ostream &) {
  Vocabulary vocab = LoadVocab(s);
  std::ifstream in(InputPath(s, "assertions"));
  ParseResult parsed = ParseAssertions(in, vocab.relations());
  BuildStats stats;
  KnowledgeIndex index = KnowledgeIndex::Build(
      parsed.assertions, vocab, static_cast<int>(s.GetInt("max-ngram")),
      StopwordsFrom(s), &stats);
  index.SaveFile(OutputPath(s, "index"));
  out << "index: " << index.num_concepts() << " concepts, "
      << index.num_assertions() << " assertions (parsed " << parsed.stats.lines
      << " lines, skipped " << parsed.stats.warnings() << ", dropped "
      << stats.dropped_out_of_vocabulary << " out of vocabulary, "
      << stats.dropped_no_key << " without key)\n";
  return kExitOk;
}

int RunMakeDataset(const Settings &s, std::ostream &out, std::ostream &) {
  Vocabulary vocab = LoadVocab(s);
  KnowledgeIndex index = LoadIndex(s);
  std::vector<DialoguePair> pairs = ReadPairsFile(InputPath(s, "pairs"));
  const std::size_t read = pairs.size();
  if (s.GetBool("filter")) pairs = FilterEvalPairs(pairs, index, StopwordsFrom(s));
  std::vector<EvalInstance> instances =
      MakeCandidateSets(EncodePairs(pairs, vocab), s.GetUnsigned("distractors"),
                        s.GetUnsigned("seed"), &index, vocab);
  WriteInstancesFile(OutputPath(s, "instances"), instances);
  out << "instances: " << instances.size() << " from " << read << " pairs\n";
  return kExitOk;
}

int RunTrain(const Settings &s, std::ostream &out, std::ostream &) {
  ApplyThreads(s);
  const ModelKind kind = RequireKind(s);
  Vocabulary vocab = LoadVocab(s);
  std::optional<KnowledgeIndex> index;
  if (UsesKnowledge(kind) || !s.GetString("valid-instances").empty()) {
    index = LoadIndex(s);
  }

  ModelConfig config;
  config.kind = kind;
  config.embedding_dim = s.GetUnsigned("embedding-dim");
  config.hidden_dim = s.GetUnsigned("hidden-dim");
  config.vocab_size = static_cast<std::size_t>(vocab.size());
  config.tie_message_response_weights = s.GetBool("tie-weights");
  config.separate_assertion_encoder = s.GetBool("separate-assertion-encoder");
  config.vocab_fingerprint = vocab.Fingerprint();

  TrainConfig tc;
  tc.batch_size = s.GetUnsigned("batch-size");
  tc.learning_rate = s.GetDouble("lr");
  tc.epochs = s.GetUnsigned("epochs");
  tc.seed = s.GetUnsigned("seed");
  tc.patience = s.GetUnsigned("patience");
  tc.clip_norm = s.GetDouble("clip-norm");
  tc.init_range = s.GetDouble("init-range");
  if (auto emb = OptionalInput(s, "embeddings")) {
    tc.embedding_init = EmbeddingInit::kPretrained;
    tc.pretrained_embeddings = *emb;
  }
  tc.checkpoint_path = OutputPath(s, "checkpoint");
  const std::size_t max_memory = s.GetUnsigned("max-memory");

  std::vector<EncodedPair> pairs =
      EncodePairs(ReadPairsFile(InputPath(s, "pairs")), vocab);
  std::vector<TrainingExample> examples = PrepareExamples(
      BuildTrainingSet(pairs, tc.seed), vocab,
      UsesKnowledge(kind) ? &*index : nullptr, max_memory);
  std::optional<std::vector<EvalInstance>> valid;
  if (auto path = OptionalInput(s, "valid-instances")) {
    valid = ReadInstancesFile(*path, vocab, &*index);
  }
  TrainResult result = Train(config, examples, tc, valid ? &*valid : nullptr,
                             &vocab);
  std::string trace_path = s.GetString("trace");
  if (trace_path.empty()) trace_path = tc.checkpoint_path + ".trace";
  WriteTextFile(trace_path, FormatLossTrace(result.trace));
  out << "trained " << ModelKindName(kind) << ": " << result.trace.size()
      << " epochs, best epoch " << result.best_epoch << ", config hash "
      << HexString(config.Hash()) << '\n';
  if (result.aborted) {
    out << "aborted: " << result.abort_reason << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int RunEvaluate(const Settings &s, std::ostream &out, std::ostream &) {
  ApplyThreads(s);
  Vocabulary vocab = LoadVocab(s);
  std::optional<KnowledgeIndex> index;
  if (!s.GetString("index").empty()) index = LoadIndex(s);
  std::vector<EvalInstance> instances = ReadInstancesFile(
      InputPath(s, "instances"), vocab, index ? &*index : nullptr);
  const std::vector<std::size_t> ks = ParseKs(s.GetString("k"));
  const std::uint64_t seed = s.GetUnsigned("seed");
  const std::string name = s.GetString("model");

  std::optional<Model> model;
  std::unique_ptr<CandidateScorer> scorer;
  std::uint64_t config_hash = 0;
  if (name == "random") {
    scorer = std::make_unique<RandomScorer>(seed);
  } else if (name == "assertion_lookup") {
    if (!index) throw std::invalid_argument("assertion_lookup needs --index");
    scorer = std::make_unique<AssertionLookupScorer>(*index);
  } else {
    model = Model::LoadFile(InputPath(s, "checkpoint"), RequireKind(s));
    if (UsesKnowledge(model->kind()) && !index) {
      throw std::invalid_argument(name + " needs --index");
    }
    config_hash = model->config().Hash();
    scorer = std::make_unique<ModelScorer>(*model);
  }
  RecallReport report = EvaluateRecall(*scorer, instances, ks);
  std::string metrics;
  for (std::size_t k : ks) {
    MetricsRecord record{name, k, report.recall.at(k), report.instances, seed,
                         config_hash};
    metrics += ToJsonLine(record) + "\n";
    out << "recall@" << k << " " << report.recall.at(k) << '\n';
  }
  std::string metrics_path = s.GetString("metrics");
  if (!metrics_path.empty()) WriteTextFile(metrics_path, metrics);
  return kExitOk;
}

int RunRank(const Settings &s, std::ostream &out, std::ostream &) {
  Vocabulary vocab = LoadVocab(s);
  KnowledgeIndex index = LoadIndex(s);
  std::optional<ModelKind> expected;
  if (!s.GetString("model").empty()) expected = RequireKind(s);
  Model model = Model::LoadFile(InputPath(s, "checkpoint"), expected);
  std::vector<std::string> texts;
  {
    std::ifstream in(InputPath(s, "candidates-file"));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) texts.push_back(line);
    }
  }
  if (texts.empty()) throw std::invalid_argument("candidates file is empty");
  std::vector<std::string> tokens = NormalizeAndTokenize(s.GetString("message"));
  RetrievedSet retrieved = index.Retrieve(tokens);
  Memory memory;
  if (UsesKnowledge(model.kind())) memory = BuildMemory(index, vocab, retrieved);
  std::vector<std::vector<int>> candidates;
  for (const std::string &t : texts) {
    candidates.push_back(vocab.Encode(NormalizeAndTokenize(t)).ids);
  }
  std::vector<ScoredCandidate> ranked =
      Rank(model.ScoreCandidates(vocab.Encode(tokens).ids, memory, candidates));
  out << "message: " << JoinTokens(tokens) << " (" << retrieved.size()
      << " assertions)\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const ScoredCandidate &c = ranked[r];
    out << (r + 1) << '\t' << c.score << '\t' << texts[c.index];
    if (c.activated_assertion) {
      out << "\t(" << ToString(index.assertion(*c.activated_assertion)) << ")";
    }
    out << '\n';
  }
  return kExitOk;
}

int RunCaseReport(const Settings &s, std::ostream &out, std::ostream &) {
  Vocabulary vocab = LoadVocab(s);
  KnowledgeIndex index = LoadIndex(s);
  Model baseline = Model::LoadFile(InputPath(s, "baseline"));
  Model knowledge = Model::LoadFile(InputPath(s, "knowledge"));
  std::vector<EvalInstance> instances =
      ReadInstancesFile(InputPath(s, "instances"), vocab, &index);
  const std::size_t limit = s.GetUnsigned("limit");
  std::vector<CaseRecord> records;
  for (const EvalInstance &inst : instances) {
    if (records.size() >= limit) break;
    records.push_back(CaseReport(baseline, knowledge, inst, index));
  }
  if (s.GetString("format") == "json") {
    for (const CaseRecord &r : records) out << ToJson(r).dump() << '\n';
  } else {
    out << RenderCaseTable(records);
  }
  return kExitOk;
}

int RunGradcheck(const Settings &s, std::ostream &out, std::ostream &) {
  const ModelKind kind = RequireKind(s);
  const double tolerance = s.GetDouble("tolerance");
  nn::GradientCheckResult r = CheckModelGradient(
      kind, s.GetDouble("eps"), s.GetUnsigned("samples"), s.GetUnsigned("seed"));
  out << ModelKindName(kind) << ": max relative error " << r.max_relative_error
      << " over " << r.coordinates_checked << " coordinates (worst "
      << r.worst_coordinate << ": analytic " << r.worst_analytic
      << ", numeric " << r.worst_numeric << ")\n";
  if (r.max_relative_error > tolerance) {
    out << "FAIL: above tolerance " << tolerance << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int RunServe(const Settings &s, std::ostream &out, std::ostream &) {
  Vocabulary vocab = LoadVocab(s);
  KnowledgeIndex index = LoadIndex(s);
  std::vector<std::pair<std::string, Model>> models;
  std::stringstream list(s.GetString("checkpoint"));
  std::string entry;
  while (std::getline(list, entry, ',')) {
    if (entry.empty()) continue;
    std::string id;
    std::string path = entry;
    if (auto eq = entry.find('='); eq != std::string::npos) {
      id = entry.substr(0, eq);
      path = entry.substr(eq + 1);
    }
    if (!fs::exists(path)) throw MissingInput("no such file: " + path);
    Model model = Model::LoadFile(path);
    if (id.empty()) id = std::string(ModelKindName(model.kind()));
    models.emplace_back(id, std::move(model));
  }
  RankService service(std::move(vocab), std::move(index), std::move(models));
  HttpServer server(service);
  int port = server.Bind(s.GetString("host"), static_cast<int>(s.GetInt("port")));
  out << "listening on " << s.GetString("host") << ':' << port << std::endl;
  server.Listen();
  return kExitOk;
}

int RunStats(const Settings &s, std::ostream &out, std::ostream &) {
  KnowledgeIndex index = LoadIndex(s);
  std::vector<std::vector<std::string>> messages;
  if (auto pairs = OptionalInput(s, "pairs")) {
    for (const DialoguePair &p : ReadPairsFile(*pairs)) {
      messages.push_back(NormalizeAndTokenize(p.message));
    }
  }
  IndexStats st = ComputeIndexStats(index, messages, DefaultStemmer());
  nlohmann::ordered_json j;
  j["concepts"] = st.concepts;
  j["assertions"] = st.assertions;
  j["mean_assertions_per_concept"] = st.mean_assertions_per_concept;
  j["concepts_by_length"] = st.concepts_by_length;
  j["single_assertion_concepts"] = st.single_assertion_concepts;
  j["messages"] = st.messages;
  j["mean_matched_concepts"] = st.mean_matched_concepts;
  j["mean_retrieved"] = st.mean_retrieved;
  j["messages_without_concepts"] = st.messages_without_concepts;
  out << j.dump(2) << '\n';
  return kExitOk;
}

const std::vector<Command> &Commands() {
  static const std::vector<Command> commands = {
      {"synth-corpus", "Generate a planted-knowledge corpus",
       {{"out-dir", "", "output directory"},
        {"n-pairs", "5000", "number of pairs"},
        {"n-concepts", "200", "number of concepts"},
        {"signals", "10", "signal tokens per concept"},
        {"fillers", "200", "filler vocabulary size"},
        {"message-fillers", "2", "filler words per message"},
        {"response-fillers", "2", "filler words per response"},
        {"noise", "0.15", "fraction of misleading assertions"},
        {"valid", "500", "validation pairs"},
        {"test", "1000", "test pairs"}},
       RunSynthCorpus},
      {"build-vocab", "Build a vocabulary from training pairs",
       {{"pairs", "", "training pairs TSV"},
        {"assertions", "", "assertion TSV whose concept words join the corpus"},
        {"min-freq", "5", "minimum token frequency"},
        {"vocab", "", "output vocabulary file"}},
       RunBuildVocab},
      {"build-index", "Build the concept index from an assertion dump",
       {{"assertions", "", "assertion TSV"},
        {"vocab", "", "vocabulary file"},
        {"max-ngram", "5", "longest concept key in words"},
        {"stopwords", "", "stopword file (default built-in list)"},
        {"index", "", "output index file"}},
       RunBuildIndex},
      {"make-dataset", "Build evaluation instances with distractors",
       {{"pairs", "", "pairs TSV"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"distractors", "9", "distractors per instance"},
        {"filter", "false", "apply the length/stopword/concept filter"},
        {"stopwords", "", "stopword file (default built-in list)"},
        {"instances", "", "output instances JSONL"}},
       RunMakeDataset},
      {"train", "Train a response scorer",
       {{"model", "tri_lstm", "model kind"},
        {"pairs", "", "training pairs TSV"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"valid-instances", "", "validation instances for early stopping"},
        {"checkpoint", "", "output checkpoint"},
        {"trace", "", "loss trace output (default <checkpoint>.trace)"},
        {"epochs", "20", "maximum epochs"},
        {"batch-size", "64", "mini-batch size"},
        {"lr", "0.001", "learning rate"},
        {"patience", "5", "early-stopping patience in epochs"},
        {"embedding-dim", "100", "embedding size"},
        {"hidden-dim", "256", "LSTM hidden size"},
        {"tie-weights", "true", "share message and response encoders"},
        {"separate-assertion-encoder", "true", "own LSTM for assertions"},
        {"embeddings", "", "pretrained embeddings (token v1 ... vE)"},
        {"init-range", "0.08", "uniform init half-width"},
        {"clip-norm", "0", "global gradient-norm clip (0 = off)"},
        {"max-memory", "0", "assertions kept per message (0 = all)"},
        {"threads", "0", "OpenMP threads (0 = runtime default)"}},
       RunTrain},
      {"evaluate", "Recall@k over evaluation instances",
       {{"model", "tri_lstm", "model kind, random or assertion_lookup"},
        {"checkpoint", "", "checkpoint file"},
        {"instances", "", "instances JSONL"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"k", "1,2,5", "comma-separated cutoffs"},
        {"metrics", "", "metrics JSONL output"},
        {"threads", "0", "OpenMP threads (0 = runtime default)"}},
       RunEvaluate},
      {"rank", "Rank candidate responses for one message",
       {{"model", "", "expected model kind"},
        {"checkpoint", "", "checkpoint file"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"message", "", "message text"},
        {"candidates-file", "", "one candidate per line"}},
       RunRank},
      {"case-report", "Compare a baseline and a knowledge model per instance",
       {{"baseline", "", "knowledge-free checkpoint"},
        {"knowledge", "", "knowledge-reading checkpoint"},
        {"instances", "", "instances JSONL"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"limit", "10", "instances to report"},
        {"format", "text", "text or json"}},
       RunCaseReport},
      {"gradcheck", "Finite-difference check of a model's gradient",
       {{"model", "tri_lstm", "model kind"},
        {"eps", "1e-5", "central-difference step"},
        {"samples", "200", "coordinates to check"},
        {"tolerance", "1e-4", "maximum relative error"}},
       RunGradcheck},
      {"serve", "Serve the JSON HTTP API",
       {{"checkpoint", "", "comma-separated [id=]path list"},
        {"vocab", "", "vocabulary file"},
        {"index", "", "index file"},
        {"host", "127.0.0.1", "bind address"},
        {"port", "8080", "port (0 = any free port)"}},
       RunServe},
      {"stats", "Index and retrieval statistics",
       {{"index", "", "index file"},
        {"pairs", "", "pairs TSV whose messages are matched"}},
       RunStats},
  };
  return commands;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err, const Settings::EnvLookup &env) {
  CLI::App app{"kgdial: knowledge-grounded response selection"};
  app.require_subcommand(1, 1);
  app.fallthrough(false);
  std::map<std::string, std::map<std::string, std::string>> given;
  std::map<std::string, CLI::App *> subs;
  for (const Command &cmd : Commands()) {
    CLI::App *sub = app.add_subcommand(cmd.name, cmd.help);
    auto &values = given[cmd.name];
    std::vector<Flag> flags = cmd.flags;
    flags.push_back({"config", "", "key = value settings file"});
    flags.push_back({"seed", "1", "random seed"});
    for (const Flag &f : flags) {
      std::string help = f.help;
      if (!f.default_value.empty()) help += " [" + f.default_value + "]";
      sub->add_option("--" + f.name, values[f.name], help);
    }
    subs[cmd.name] = sub;
  }

  std::vector<const char *> argv = {"kgdial"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const Command *cmd = nullptr;
  for (const Command &c : Commands()) {
    if (subs[c.name]->parsed()) cmd = &c;
  }
  CLI::App *sub = subs[cmd->name];
  try {
    Settings settings;
    for (const Flag &f : cmd->flags) settings.SetDefault(f.name, f.default_value);
    settings.SetDefault("seed", "1");
    std::string config_path;
    if (sub->get_option("--config")->count() > 0) {
      config_path = given[cmd->name]["config"];
    } else if (auto v = env(EnvName("config"))) {
      config_path = *v;
    }
    if (!config_path.empty()) {
      if (!fs::exists(config_path)) {
        throw MissingInput("no such file: " + config_path);
      }
      settings.MergeFile(config_path);
    }
    settings.MergeEnv(env);
    for (const auto &[name, value] : given[cmd->name]) {
      if (name == "config") continue;
      if (sub->get_option("--" + name)->count() > 0) settings.Set(name, value);
    }
    err << "# kgdial " << cmd->name << '\n';
    std::istringstream resolved(settings.ToText());
    for (std::string line; std::getline(resolved, line);) {
      err << "#   " << line << '\n';
    }
    return cmd->run(settings, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  return RunCli(args, out, err,
                [](const std::string &name) -> std::optional<std::string> {
                  const char *v = std::getenv(name.c_str());
                  if (!v) return std::nullopt;
                  return std::string(v);
                });
}

}  // namespace kgdial
