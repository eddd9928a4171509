// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/service.hpp"

// The library default of 5 drops bursts of concurrent clients.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <set>

#include "slrplan/error.hpp"
#include "slrplan/json_io.hpp"

namespace slrplan {

namespace {

HttpResponse error_response(int status, std::string_view code, const std::string& message,
                            const std::string& detail = {}) {
  Json j;
  j["code"] = std::string(code);
  j["message"] = message;
  if (!detail.empty()) j["detail"] = detail;
  return {status, j.dump()};
}

HttpResponse malformed(const std::string& message) { return error_response(400, "MalformedRequest", message); }

HttpResponse from_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownModel:
      return error_response(404, "UnknownModel", e.what());
    case ErrorCode::NoCoverage:
      return error_response(422, "NoCoverage", e.what());
    case ErrorCode::ZeroVector:
      return error_response(422, "NoCoverage", "query vector has zero length", "ZeroVector");
    case ErrorCode::EmptyQuery:
      return error_response(400, "EmptyQuery", e.what());
    case ErrorCode::EmptyCorpus:
    case ErrorCode::MalformedRequest:
    case ErrorCode::InvalidConfig:
      return error_response(400, "MalformedRequest", e.what(), std::string(to_string(e.code())));
    default:
      return error_response(500, "InternalError", e.what(), std::string(to_string(e.code())));
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ServiceConfig::validate() const {
  if (port < 1 || port > 65535) throw Error(ErrorCode::InvalidConfig, "port must be in [1, 65535]");
  if (corpus_path.empty()) throw Error(ErrorCode::InvalidConfig, "corpus_path is required");
  if (model_paths.empty()) throw Error(ErrorCode::InvalidConfig, "model_paths must name at least one model");
  std::set<std::string> names;
  for (const auto& [name, path] : model_paths) {
    if (!names.insert(name).second) throw Error(ErrorCode::InvalidConfig, "model name '" + name + "' repeated");
  }
  if (names.count(default_model) == 0) {
    throw Error(ErrorCode::InvalidConfig, "default_model '" + default_model + "' is not in model_paths");
  }
  if (request_size_limit == 0) throw Error(ErrorCode::InvalidConfig, "request_size_limit must be positive");
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open service config " + path.string());
  ServiceConfig config;
  try {
    const Json j = Json::parse(in);
    const auto base = path.parent_path();
    config.listen_address = j.value("listen_address", config.listen_address);
    config.port = j.value("port", config.port);
    config.corpus_path = resolve(base, j.at("corpus_path").get<std::string>()).string();
    for (const auto& m : j.at("model_paths")) {
      config.model_paths.emplace_back(m.at("name").get<std::string>(),
                                      resolve(base, m.at("path").get<std::string>()).string());
    }
    config.default_model = j.value("default_model", config.model_paths.empty() ? std::string()
                                                                                : config.model_paths.front().first);
    if (auto p = j.value("pipeline_config_path", std::string()); !p.empty()) {
      config.pipeline_config_path = resolve(base, p).string();
    }
    config.request_size_limit = j.value("request_size_limit", config.request_size_limit);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "service config " + path.string() + ": " + e.what());
  }
  config.validate();
  return config;
}

// ---------------------------------------------------------------------------
// SimilarityService

SimilarityService::SimilarityService(Corpus corpus, TextResources corpus_resources, ModelRegistry models,
                                     std::string default_model, PipelineSetup inline_pipeline,
                                     TextResources inline_resources)
    : corpus_(std::move(corpus)),
      corpus_resources_(std::move(corpus_resources)),
      models_(std::move(models)),
      default_model_(std::move(default_model)),
      inline_pipeline_(std::move(inline_pipeline)),
      inline_resources_(std::move(inline_resources)) {
  if (!models_.contains(default_model_)) {
    throw Error(ErrorCode::UnknownModel, "default model '" + default_model_ + "' is not loaded");
  }
  for (const auto& [name, model] : models_.models()) {
    corpus_vectors_.emplace(name, vectorize_corpus(corpus_, *model, corpus_resources_));
  }
}

std::unique_ptr<SimilarityService> SimilarityService::from_config(const ServiceConfig& config) {
  config.validate();
  Corpus corpus = [&] {
    try {
      return load(std::filesystem::path(config.corpus_path));
    } catch (const Error& e) {
      throw Error(e.code(), "corpus " + config.corpus_path + ": " + e.what(), e.line());
    }
  }();
  TextResources corpus_resources = load_resources(corpus.pipeline);

  ModelRegistry registry;
  for (const auto& [name, path] : config.model_paths) {
    try {
      registry.add(load_text_model<double>(path, name));
    } catch (const Error& e) {
      throw Error(e.code(), "model '" + name + "' (" + path + "): " + e.what(), e.line());
    }
  }

  PipelineSetup inline_setup = corpus.pipeline;
  if (!config.pipeline_config_path.empty()) inline_setup = load_pipeline_setup(config.pipeline_config_path);
  TextResources inline_resources = load_resources(inline_setup);

  return std::make_unique<SimilarityService>(std::move(corpus), std::move(corpus_resources), std::move(registry),
                                             config.default_model, std::move(inline_setup),
                                             std::move(inline_resources));
}

template <typename Rank>
HttpResponse SimilarityService::similarity(std::string_view body, QueryMode mode, Rank&& rank) const {
  Json request;
  try {
    request = Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return malformed(std::string("request body is not valid JSON: ") + e.what());
  }
  if (!request.is_object()) return malformed("request body must be a JSON object");

  try {
    std::string model_name = default_model_;
    if (auto it = request.find("model"); it != request.end() && !it->is_null()) {
      if (!it->is_string()) return malformed("'model' must be a string");
      model_name = it->get<std::string>();
    }
    const auto model = models_.get(model_name);

    RankedList ranked;
    if (auto it = request.find("abstracts"); it != request.end() && !it->is_null()) {
      if (!it->is_array() || it->empty()) return malformed("'abstracts' must be a non-empty array");
      Corpus inline_corpus;
      inline_corpus.pipeline = inline_pipeline_;
      std::set<std::string> ids;
      for (const auto& item : *it) {
        if (!item.is_object() || !item.contains("doc_id") || !item.contains("abstract") ||
            !item["doc_id"].is_string() || !item["abstract"].is_string()) {
          return malformed("each abstract needs string fields 'doc_id' and 'abstract'");
        }
        SlrRecord record;
        record.doc_id = item["doc_id"].get<std::string>();
        record.abstract = item["abstract"].get<std::string>();
        if (record.doc_id.empty()) return malformed("empty doc_id in 'abstracts'");
        if (!ids.insert(record.doc_id).second) return malformed("duplicate doc_id '" + record.doc_id + "'");
        inline_corpus.records.push_back(std::move(record));
      }
      std::sort(inline_corpus.records.begin(), inline_corpus.records.end(),
                [](const SlrRecord& a, const SlrRecord& b) { return a.doc_id < b.doc_id; });
      const CorpusVectors vectors = vectorize_corpus(inline_corpus, *model, inline_resources_);
      ranked = rank(request, vectors, *model, inline_resources_, inline_pipeline_.config);
    } else {
      ranked = rank(request, corpus_vectors_.find(model_name)->second, *model, corpus_resources_,
                    corpus_.pipeline.config);
    }

    Json response;
    response["model"] = model_name;
    response["mode"] = std::string(to_string(mode));
    response["results"] = results_to_json(ranked.results);
    response["skipped"] = skipped_to_json(ranked.skipped);
    return {200, response.dump()};
  } catch (const Error& e) {
    return from_error(e);
  } catch (const nlohmann::json::exception& e) {
    return malformed(e.what());
  }
}

HttpResponse SimilarityService::research_questions(std::string_view body) const {
  return similarity(body, QueryMode::ResearchQuestions,
                    [](const Json& request, const CorpusVectors& vectors, const EmbeddingModel& model,
                       const TextResources& resources, const PipelineConfig& config) {
                      auto it = request.find("questions");
                      if (it == request.end() || !it->is_array()) {
                        throw Error(ErrorCode::MalformedRequest, "'questions' must be an array of strings");
                      }
                      std::vector<std::string> questions;
                      for (const auto& q : *it) {
                        if (!q.is_string()) {
                          throw Error(ErrorCode::MalformedRequest, "'questions' must be an array of strings");
                        }
                        questions.push_back(q.get<std::string>());
                      }
                      Aggregation aggregation = Aggregation::Concat;
                      if (auto a = request.find("aggregation"); a != request.end() && !a->is_null()) {
                        if (!a->is_string()) throw Error(ErrorCode::MalformedRequest, "'aggregation' must be a string");
                        try {
                          aggregation = aggregation_from_string(a->get<std::string>());
                        } catch (const Error& e) {
                          throw Error(ErrorCode::MalformedRequest, e.what());
                        }
                      }
                      return rank_by_research_questions(questions, vectors, model, resources, config, aggregation);
                    });
}

HttpResponse SimilarityService::seed_abstract(std::string_view body) const {
  return similarity(body, QueryMode::SeedAbstract,
                    [](const Json& request, const CorpusVectors& vectors, const EmbeddingModel& model,
                       const TextResources& resources, const PipelineConfig& config) {
                      auto it = request.find("seed");
                      if (it == request.end() || !it->is_string()) {
                        throw Error(ErrorCode::MalformedRequest, "'seed' must be a string");
                      }
                      return rank_by_seed_abstract(it->get<std::string>(), vectors, model, resources, config);
                    });
}

HttpResponse SimilarityService::models() const {
  Json out = Json::array();
  for (const auto& m : list_models(models_)) {
    Json row;
    row["name"] = m.name;
    row["dimension"] = m.dimension;
    row["vocab_size"] = m.vocab_size;
    out.push_back(std::move(row));
  }
  return {200, out.dump()};
}

HttpResponse SimilarityService::health() const {
  Json out;
  out["status"] = "ok";
  out["corpus_size"] = corpus_.records.size();
  out["models"] = models_.names();
  return {200, out.dump()};
}

HttpResponse SimilarityService::handle(std::string_view method, std::string_view path, std::string_view body) const {
  if (path == "/v1/similarity/research-questions" || path == "/v1/similarity/seed-abstract") {
    if (method != "POST") return error_response(405, "MalformedRequest", "use POST");
    return path == "/v1/similarity/seed-abstract" ? seed_abstract(body) : research_questions(body);
  }
  if (path == "/v1/models" || path == "/v1/health") {
    if (method != "GET") return error_response(405, "MalformedRequest", "use GET");
    return path == "/v1/models" ? models() : health();
  }
  return error_response(404, "MalformedRequest", "no such endpoint: " + std::string(path));
}

// ---------------------------------------------------------------------------
// HttpServer

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const SimilarityService& service, std::size_t request_size_limit)
    : impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  server.set_payload_max_length(request_size_limit);
  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/v1/models", dispatch);
  server.Get("/v1/health", dispatch);
  server.Post("/v1/similarity/research-questions", dispatch);
  server.Post("/v1/similarity/seed-abstract", dispatch);
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string code = res.status == 404 ? "no such endpoint: " + req.path : "request rejected";
    const HttpResponse r = error_response(res.status, "MalformedRequest", code);
    res.set_content(r.body, "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& address, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(address);
    if (bound < 0) throw Error(ErrorCode::IoFailure, "cannot bind " + address);
    return bound;
  }
  if (!impl_->server.bind_to_port(address, port)) {
    throw Error(ErrorCode::IoFailure, "cannot bind " + address + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

namespace {
HttpServer* g_running_server = nullptr;
extern "C" void handle_stop_signal(int) {
  if (g_running_server != nullptr) g_running_server->stop();
}
}  // namespace

int serve(const ServiceConfig& config) {
  const auto service = SimilarityService::from_config(config);
  HttpServer server(*service, config.request_size_limit);
  const int port = server.bind(config.listen_address, config.port);
  std::cerr << "slrplan: serving " << service->corpus().records.size() << " records with "
            << service->registry().size() << " model(s) on " << config.listen_address << ':' << port << '\n';
  g_running_server = &server;
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  server.listen();
  g_running_server = nullptr;
  return 0;
}

}  // namespace slrplan
