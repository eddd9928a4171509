// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include <doctest.h>

#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "slrplan/cli.hpp"
#include "slrplan/error.hpp"
#include "slrplan/json_io.hpp"
#include "slrplan/service.hpp"

// after Eigen: <resolv.h> defines a macro named _res
#include <httplib.h>

using namespace slrplan;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "slrplan");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Curated fixture corpus and a service config in a temporary directory.
struct Deployment {
  fixtures::TempDir tmp{"gateway"};
  std::filesystem::path corpus = tmp / "corpus.jsonl";
  std::filesystem::path config = tmp / "service.json";

  Deployment() {
    const auto r = cli({"ingest", "--input", (fixtures::dir() / "fixture_corpus.jsonl").string(), "--output",
                        corpus.string(), "--timestamp", "2026-01-01T00:00:00Z"});
    REQUIRE(r.code == 0);
    const auto models = fixtures::dir() / "models";
    Json j;
    j["port"] = 8080;
    j["corpus_path"] = "corpus.jsonl";
    j["model_paths"] = Json::array({{{"name", "alpha"}, {"path", (models / "alpha.txt").string()}},
                                    {{"name", "beta"}, {"path", (models / "beta.txt").string()}}});
    j["default_model"] = "alpha";
    j["request_size_limit"] = 4096;
    std::ofstream(config) << j.dump();
  }

  std::unique_ptr<SimilarityService> service() const { return SimilarityService::from_config(load_service_config(config)); }
};

Json body_of(const HttpResponse& r) { return Json::parse(r.body); }

std::string questions_body() {
  Json q;
  q["questions"] = Json::array();
  std::istringstream in(fixtures::read_text(fixtures::dir() / "fixture_questions.txt"));
  std::string line;
  while (std::getline(in, line)) q["questions"].push_back(line);
  return q.dump();
}

}  // namespace

TEST_CASE("service configuration") {
  Deployment d;
  const auto config = load_service_config(d.config);
  CHECK(config.corpus_path == d.corpus.lexically_normal().string());
  CHECK(config.model_paths.size() == 2);
  CHECK(config.request_size_limit == 4096);
  CHECK(config.listen_address == "127.0.0.1");

  ServiceConfig bad = config;
  bad.default_model = "gamma";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = config;
  bad.port = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = config;
  bad.model_paths.push_back(bad.model_paths.front());
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.model_paths[1].second = "/nonexistent/beta.txt";
  try {
    SimilarityService::from_config(bad);
    FAIL("expected a load error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }
}

TEST_CASE("service handlers") {
  Deployment d;
  const auto service = d.service();

  auto health = service->handle("GET", "/v1/health", "");
  CHECK(health.status == 200);
  CHECK(body_of(health)["corpus_size"] == 10);

  auto models = service->handle("GET", "/v1/models", "");
  CHECK(models.status == 200);
  CHECK(body_of(models)[0]["name"] == "alpha");
  CHECK(body_of(models)[0]["dimension"] == 8);

  auto ranked = service->handle("POST", "/v1/similarity/research-questions", questions_body());
  REQUIRE(ranked.status == 200);
  const auto j = body_of(ranked);
  CHECK(j["model"] == "alpha");
  CHECK(j["mode"] == "research_questions");
  CHECK(j["results"].size() + j["skipped"].size() == 10);
  CHECK(j["results"][0]["rank"] == 1);

  auto seed = service->handle("POST", "/v1/similarity/seed-abstract",
                              Json{{"seed", fixtures::read_text(fixtures::dir() / "fixture_seed.txt")},
                                   {"model", "beta"}}
                                  .dump());
  REQUIRE(seed.status == 200);
  CHECK(body_of(seed)["model"] == "beta");
  CHECK(body_of(seed)["mode"] == "seed_abstract");

  auto unknown = service->handle("POST", "/v1/similarity/seed-abstract", R"({"seed":"testing","model":"gamma"})");
  CHECK(unknown.status == 404);
  CHECK(body_of(unknown)["code"] == "UnknownModel");

  auto empty = service->handle("POST", "/v1/similarity/research-questions", R"({"questions":["", " "]})");
  CHECK(empty.status == 400);
  CHECK(body_of(empty)["code"] == "EmptyQuery");

  auto foreign = service->handle("POST", "/v1/similarity/seed-abstract", R"({"seed":"zzxq wwyv"})");
  CHECK(foreign.status == 422);
  CHECK(body_of(foreign)["code"] == "NoCoverage");

  for (const char* bad : {"not json", "[]", R"({"questions":"x"})", R"({"questions":[1]})",
                          R"({"questions":["x"],"aggregation":"median"})", R"({"questions":["x"],"model":3})",
                          R"({"questions":["x"],"abstracts":[]})", R"({"questions":["x"],"abstracts":[{"doc_id":"a"}]})"}) {
    CAPTURE(bad);
    auto r = service->handle("POST", "/v1/similarity/research-questions", bad);
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "MalformedRequest");
  }
  CHECK(service->handle("GET", "/v1/similarity/seed-abstract", "").status == 405);
  CHECK(service->handle("GET", "/v2/other", "").status == 404);
}

TEST_CASE("service: inline abstracts replace the stored corpus") {
  Deployment d;
  const auto service = d.service();
  Json req;
  req["questions"] = {"software testing tools"};
  req["abstracts"] = Json::array({{{"doc_id", "x2"}, {"abstract", "Clinical patient diagnosis in hospitals."}},
                                  {{"doc_id", "x1"}, {"abstract", "Automated software testing tools."}},
                                  {{"doc_id", "x3"}, {"abstract", "Qwzx vvbn."}}});
  auto r = service->handle("POST", "/v1/similarity/research-questions", req.dump());
  REQUIRE(r.status == 200);
  const auto j = body_of(r);
  REQUIRE(j["results"].size() == 2);
  CHECK(j["results"][0]["doc_id"] == "x1");
  CHECK(j["skipped"][0]["doc_id"] == "x3");

  req["abstracts"].push_back({{"doc_id", "x1"}, {"abstract", "dup"}});
  CHECK(service->handle("POST", "/v1/similarity/research-questions", req.dump()).status == 400);
}

TEST_CASE("CLI and service agree on results") {
  Deployment d;
  const auto service = d.service();
  const auto questions = (fixtures::dir() / "fixture_questions.txt").string();
  const auto models = (fixtures::dir() / "models").string();
  for (const std::string model : {"alpha", "beta"}) {
    const auto r = cli({"rank", "--mode", "rq", "--questions-file", questions, "--corpus", d.corpus.string(), "--model",
                        model, "--models-dir", models});
    REQUIRE(r.code == 0);
    Json req = Json::parse(questions_body());
    req["model"] = model;
    const auto s = service->handle("POST", "/v1/similarity/research-questions", req.dump());
    REQUIRE(s.status == 200);
    CHECK(Json::parse(r.out)["results"] == body_of(s)["results"]);
    CHECK(Json::parse(r.out)["skipped"] == body_of(s)["skipped"]);
  }
}

TEST_CASE("HTTP server: concurrent identical requests") {
  Deployment d;
  const auto service = d.service();
  HttpServer server(*service, 4096);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });
  server.wait_until_ready();

  const std::string body = questions_body();
  std::vector<std::future<std::pair<int, std::string>>> calls;
  for (int i = 0; i < 32; ++i) {
    calls.push_back(std::async(std::launch::async, [&] {
      httplib::Client client("127.0.0.1", port);
      auto res = client.Post("/v1/similarity/research-questions", body, "application/json");
      return res ? std::make_pair(res->status, res->body) : std::make_pair(-1, httplib::to_string(res.error()));
    }));
  }
  std::vector<std::pair<int, std::string>> replies;
  for (auto& c : calls) replies.push_back(c.get());
  for (const auto& r : replies) {
    CHECK(r.first == 200);
    CHECK(r.second == replies.front().second);
  }
  CHECK(replies.front().second == service->handle("POST", "/v1/similarity/research-questions", body).body);

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  auto missing = client.Get("/nowhere");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(Json::parse(missing->body)["code"] == "MalformedRequest");
  auto big = client.Post("/v1/similarity/seed-abstract", std::string(8192, 'x'), "application/json");
  REQUIRE(big);
  CHECK(big->status == 413);

  server.stop();
  loop.join();
}

TEST_CASE("CLI: ingest, rank and evaluate") {
  Deployment d;
  const auto models = (fixtures::dir() / "models").string();
  const auto questions = (fixtures::dir() / "fixture_questions.txt").string();
  const auto seed = (fixtures::dir() / "fixture_seed.txt").string();
  const auto annotations = (fixtures::dir() / "fixture_annotations.csv").string();

  const std::vector<std::string> rank_args{"rank", "--mode", "rq", "--questions-file", questions, "--corpus",
                                           d.corpus.string(), "--model", "alpha", "--models-dir", models};
  const auto first = cli(rank_args);
  const auto second = cli(rank_args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(Json::parse(first.out)["query"]["mode"] == "research_questions");

  auto top = rank_args;
  top.insert(top.end(), {"--k", "3", "--output", (d.tmp / "top.json").string()});
  REQUIRE(cli(top).code == 0);
  CHECK(Json::parse(fixtures::read_text(d.tmp / "top.json"))["results"].size() == 3);

  const auto seeded = cli({"rank", "--mode", "seed", "--seed-file", seed, "--corpus", d.corpus.string(), "--model",
                           "beta", "--models-dir", models});
  REQUIRE(seeded.code == 0);
  CHECK(Json::parse(seeded.out)["query"]["mode"] == "seed_abstract");

  const auto eval = cli({"evaluate", "--corpus", d.corpus.string(), "--annotations", annotations, "--models-dir",
                         models, "--questions-file", questions, "--k", "5,10", "--table"});
  REQUIRE(eval.code == 0);
  CHECK(eval.out.find("alpha") != std::string::npos);
  CHECK(eval.out.find("P@10") != std::string::npos);

  const auto eval_json = cli({"evaluate", "--corpus", d.corpus.string(), "--annotations", annotations,
                              "--models-dir", models, "--questions-file", questions});
  REQUIRE(eval_json.code == 0);
  const auto report = Json::parse(eval_json.out);
  CHECK(report["k_values"] == Json::array({5, 10, 20}));
  CHECK(report["per_model"].size() == 2);

  const auto listing = cli({"models", "--models-dir", models, "--json"});
  REQUIRE(listing.code == 0);
  CHECK(Json::parse(listing.out)[1]["name"] == "beta");
}

TEST_CASE("CLI: exit codes and diagnostics") {
  Deployment d;
  const auto models = (fixtures::dir() / "models").string();
  const auto questions = (fixtures::dir() / "fixture_questions.txt").string();

  const auto missing = cli({"evaluate", "--corpus", d.corpus.string(), "--annotations", "/nonexistent/labels.csv",
                            "--models-dir", models, "--questions-file", questions});
  CHECK(missing.code == kExitDataError);
  CHECK(missing.err.find("/nonexistent/labels.csv") != std::string::npos);
  CHECK(missing.err.rfind("slrplan: error: IoFailure", 0) == 0);

  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"rank", "--corpus", "x"}).code == kExitUsage);
  CHECK(cli({"rank", "--corpus", "x", "--model", "m", "--models-dir", "d"}).code == kExitUsage);
  CHECK(cli({"rank", "--mode", "bogus", "--corpus", "x", "--model", "m", "--models-dir", "d"}).code == kExitUsage);
  CHECK(cli({"evaluate", "--corpus", "x", "--annotations", "a", "--models-dir", "d", "--questions-file", "q", "--k",
             "5,x"})
            .code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);

  const auto unknown = cli({"rank", "--questions-file", questions, "--corpus", d.corpus.string(), "--model", "gamma",
                            "--models-dir", models});
  CHECK(unknown.code == kExitDataError);
  CHECK(unknown.err.find("gamma") != std::string::npos);

  std::ofstream(d.tmp / "bad.jsonl") << R"({"doc_id":"a","title":"T","year":2020})" << '\n';
  const auto bad = cli({"ingest", "--input", (d.tmp / "bad.jsonl").string(), "--output", (d.tmp / "o").string()});
  CHECK(bad.code == kExitDataError);
  CHECK(bad.err.find("MissingField") != std::string::npos);
}
