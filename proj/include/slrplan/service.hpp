// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_SERVICE_HPP
#define SLRPLAN_SERVICE_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slrplan/corpus.hpp"
#include "slrplan/embedding.hpp"
#include "slrplan/similarity.hpp"

namespace slrplan {

struct ServiceConfig {
  std::string listen_address = "127.0.0.1";
  int port = 8080;
  std::string corpus_path;
  std::vector<std::pair<std::string, std::string>> model_paths;  // (name, path)
  std::string default_model;
  // Pipeline for inline abstracts; empty uses the corpus's own pipeline.
  std::string pipeline_config_path;
  std::size_t request_size_limit = 1 << 20;

  // Throws Error(InvalidConfig).
  void validate() const;
};

// JSON object with the field names above; model_paths is an array of
// {name, path}. Relative paths resolve against the file's directory.
ServiceConfig load_service_config(const std::filesystem::path& path);

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

/// The two similarity endpoints plus model listing and health, over state
/// that is loaded once and never mutated. Handlers are safe to call from
/// many threads at once.
class SimilarityService {
 public:
  SimilarityService(Corpus corpus, TextResources corpus_resources, ModelRegistry models,
                    std::string default_model, PipelineSetup inline_pipeline, TextResources inline_resources);

  // Loads corpus, models and pipeline data; throws Error naming the failing
  // resource.
  static std::unique_ptr<SimilarityService> from_config(const ServiceConfig& config);

  HttpResponse research_questions(std::string_view body) const;
  HttpResponse seed_abstract(std::string_view body) const;
  HttpResponse models() const;
  HttpResponse health() const;

  // Routes a request to a handler: 404 for unknown paths, 405 for a wrong
  // method.
  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

  const Corpus& corpus() const noexcept { return corpus_; }
  const ModelRegistry& registry() const noexcept { return models_; }
  const std::string& default_model() const noexcept { return default_model_; }

 private:
  template <typename Rank>
  HttpResponse similarity(std::string_view body, QueryMode mode, Rank&& rank) const;

  Corpus corpus_;
  TextResources corpus_resources_;
  ModelRegistry models_;
  std::string default_model_;
  PipelineSetup inline_pipeline_;
  TextResources inline_resources_;
  std::map<std::string, CorpusVectors, std::less<>> corpus_vectors_;
};

/// HTTP front end over a SimilarityService.
class HttpServer {
 public:
  HttpServer(const SimilarityService& service, std::size_t request_size_limit);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without accepting yet; port 0 picks a free port. Returns the port.
  int bind(const std::string& address, int port);
  // Blocks until stop() is called.
  void listen();
  // Blocks until listen() has started accepting.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Loads everything named in the config, then serves until the process is
// interrupted.
int serve(const ServiceConfig& config);

}  // namespace slrplan

#endif  // SLRPLAN_SERVICE_HPP
