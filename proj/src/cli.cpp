// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "slrplan/error.hpp"
#include "slrplan/evaluation.hpp"
#include "slrplan/json_io.hpp"
#include "slrplan/service.hpp"

namespace slrplan {

namespace {

std::string read_file(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + std::string(what) + " " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path, std::string_view what) {
  std::istringstream in(read_file(path, what));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::IoFailure, "cannot write " + path);
}

struct QueryArgs {
  std::string mode = "rq";
  std::string questions_file;
  std::string seed_file;
  std::string aggregation = "concat";
};

void add_query_options(CLI::App& cmd, QueryArgs& q) {
  cmd.add_option("--mode", q.mode, "Query mode")->check(CLI::IsMember({"rq", "seed"}));
  cmd.add_option("--questions-file", q.questions_file, "Research questions, one per line");
  cmd.add_option("--seed-file", q.seed_file, "Seed abstract text file");
  cmd.add_option("--aggregation", q.aggregation, "How several questions form one score")
      ->check(CLI::IsMember({"concat", "max_per_question"}));
}

// Usage-level check: the file flag matching the mode must be present.
void require_query_file(const QueryArgs& q) {
  if (q.mode == "rq" && q.questions_file.empty()) throw CLI::RequiredError("--questions-file (with --mode rq)");
  if (q.mode == "seed" && q.seed_file.empty()) throw CLI::RequiredError("--seed-file (with --mode seed)");
}

QueryInputs read_query(const QueryArgs& q) {
  QueryInputs inputs;
  inputs.aggregation = aggregation_from_string(q.aggregation);
  if (q.mode == "rq") {
    inputs.questions = read_lines(q.questions_file, "questions file");
  } else {
    inputs.seed = read_file(q.seed_file, "seed file");
  }
  return inputs;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--k", "'" + item + "' is not an integer");
    }
    if (k < 1) throw CLI::ValidationError("--k", "cutoffs must be >= 1");
    ks.push_back(k);
  }
  if (ks.empty()) throw CLI::ValidationError("--k", "no cutoffs given");
  return ks;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank published systematic reviews by similarity to draft research questions or a seed abstract",
               "slrplan"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_input, ingest_output, ingest_config, ingest_timestamp;
  auto* ingest = app.add_subcommand("ingest", "Validate, curate and store a line-delimited record file");
  ingest->add_option("--input", ingest_input, "Raw records (one JSON object per line)")->required();
  ingest->add_option("--output", ingest_output, "Curated corpus file to write")->required();
  ingest->add_option("--config", ingest_config, "Pipeline configuration (JSON)");
  ingest->add_option("--timestamp", ingest_timestamp, "Curation timestamp to record (default: now)");

  // rank
  QueryArgs rank_query;
  std::string rank_corpus, rank_model, rank_models_dir, rank_output;
  int rank_k = 0;
  auto* rank = app.add_subcommand("rank", "Rank a curated corpus against a query");
  add_query_options(*rank, rank_query);
  rank->add_option("--corpus", rank_corpus, "Curated corpus file")->required();
  rank->add_option("--model", rank_model, "Model name (file stem in --models-dir)")->required();
  rank->add_option("--models-dir", rank_models_dir, "Directory of embedding text files")->required();
  rank->add_option("--k", rank_k, "Keep only the top k results (0 = all)")->check(CLI::NonNegativeNumber);
  rank->add_option("--output", rank_output, "Output file (default: standard output)");

  // evaluate
  QueryArgs eval_query;
  std::string eval_corpus, eval_annotations, eval_models_dir, eval_output, eval_k = "5,10,20";
  bool eval_table = false;
  auto* evaluate = app.add_subcommand("evaluate", "Compare embedding models against human annotations");
  add_query_options(*evaluate, eval_query);
  evaluate->add_option("--corpus", eval_corpus, "Curated corpus file")->required();
  evaluate->add_option("--annotations", eval_annotations, "CSV doc_id,label,rating")->required();
  evaluate->add_option("--models-dir", eval_models_dir, "Directory of embedding text files")->required();
  evaluate->add_option("--k", eval_k, "Comma-separated precision/recall cutoffs");
  evaluate->add_option("--output", eval_output, "Report file (default: standard output)");
  evaluate->add_flag("--table", eval_table, "Also print an aligned table to standard output");

  // serve
  std::string serve_config;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the similarity API over HTTP");
  serve_cmd->add_option("--config", serve_config, "Service configuration (JSON)")->required();

  // models
  std::string models_dir;
  bool models_json = false;
  auto* models = app.add_subcommand("models", "List the embedding models in a directory");
  models->add_option("--models-dir", models_dir, "Directory of embedding text files")->required();
  models->add_flag("--json", models_json, "Print JSON instead of a table");

  std::vector<int> k_values;
  try {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (*rank) require_query_file(rank_query);
    if (*evaluate) {
      require_query_file(eval_query);
      k_values = parse_k_list(eval_k);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "slrplan: usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*ingest) {
      const PipelineSetup setup =
          ingest_config.empty() ? default_pipeline_setup() : load_pipeline_setup(ingest_config);
      const Corpus corpus = slrplan::ingest(std::filesystem::path(ingest_input), setup, load_resources(setup),
                                            ingest_timestamp);
      save(corpus, std::filesystem::path(ingest_output));
      err << "slrplan: ingested " << corpus.records.size() << " records into " << ingest_output << '\n';
    } else if (*rank) {
      const Corpus corpus = load(std::filesystem::path(rank_corpus));
      const TextResources resources = load_resources(corpus.pipeline);
      const auto model = load_text_model<double>(find_model_file(rank_models_dir, rank_model), rank_model);
      const QueryInputs q = read_query(rank_query);
      RankedList ranked = rank_query.mode == "rq"
                              ? rank_by_research_questions(q.questions, corpus, model, resources, q.aggregation)
                              : rank_by_seed_abstract(q.seed, corpus, model, resources);
      if (rank_k > 0 && ranked.results.size() > static_cast<std::size_t>(rank_k)) {
        ranked.results.resize(static_cast<std::size_t>(rank_k));
      }
      write_output(rank_output, canonical_text(to_json(ranked)), out);
    } else if (*evaluate) {
      const Corpus corpus = load(std::filesystem::path(eval_corpus));
      const TextResources resources = load_resources(corpus.pipeline);
      const AnnotatedCorpus annotated = annotate(corpus, std::filesystem::path(eval_annotations));
      const ModelRegistry registry = load_models_dir(eval_models_dir);
      if (registry.empty()) throw Error(ErrorCode::UnknownModel, "no model files in " + eval_models_dir);
      const QueryMode mode = eval_query.mode == "rq" ? QueryMode::ResearchQuestions : QueryMode::SeedAbstract;
      const EvaluationReport report =
          evaluate_models(annotated, registry, mode, read_query(eval_query), k_values, resources);
      const std::string json = canonical_text(to_json(report));
      if (eval_table) out << format_table(report);
      if (!eval_output.empty() || !eval_table) write_output(eval_output, json, out);
    } else if (*serve_cmd) {
      return serve(load_service_config(serve_config));
    } else if (*models) {
      const auto summaries = list_models(load_models_dir(models_dir));
      if (models_json) {
        Json j = Json::array();
        for (const auto& m : summaries) {
          j.push_back({{"name", m.name}, {"dimension", m.dimension}, {"vocab_size", m.vocab_size}});
        }
        out << canonical_text(j);
      } else {
        std::size_t width = 4;
        for (const auto& m : summaries) width = std::max(width, m.name.size());
        out << std::left << std::setw(static_cast<int>(width)) << "name" << "  dimension  vocab_size\n";
        for (const auto& m : summaries) {
          out << std::left << std::setw(static_cast<int>(width)) << m.name << "  " << std::setw(9) << m.dimension
              << "  " << m.vocab_size << '\n';
        }
      }
    }
  } catch (const Error& e) {
    err << "slrplan: error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "slrplan: error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace slrplan
