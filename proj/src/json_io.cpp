// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/json_io.hpp"

#include "slrplan/error.hpp"

namespace slrplan {

Json to_json(const PipelineSetup& setup) {
  const PipelineConfig& c = setup.config;
  Json j;
  j["lowercase"] = c.lowercase;
  j["strip_numbers"] = c.strip_numbers;
  j["ngram_max"] = c.ngram_max;
  j["keyword_mode"] = std::string(to_string(c.keyword_mode));
  j["stopwords"] = Json::array();
  for (const auto& w : c.stopword_list) j["stopwords"].push_back(w);
  j["lemma_dictionary"] = setup.lemma_dictionary;
  j["pos_lexicon"] = setup.pos_lexicon;
  return j;
}

PipelineSetup pipeline_setup_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "pipeline config must be an object");
  PipelineSetup setup;
  PipelineConfig& c = setup.config;
  c.lowercase = j.value("lowercase", c.lowercase);
  c.strip_numbers = j.value("strip_numbers", c.strip_numbers);
  c.ngram_max = j.value("ngram_max", c.ngram_max);
  c.keyword_mode = keyword_mode_from_string(j.value("keyword_mode", std::string(to_string(c.keyword_mode))));
  if (auto it = j.find("stopwords"); it != j.end()) {
    for (const auto& w : *it) c.stopword_list.insert(w.get<std::string>());
  } else {
    c.stopword_list = default_pipeline_config().stopword_list;
  }
  setup.lemma_dictionary = j.value("lemma_dictionary", std::string());
  setup.pos_lexicon = j.value("pos_lexicon", std::string());
  c.validate();
  return setup;
}

Json to_json(const SlrRecord& r) {
  Json j;
  j["doc_id"] = r.doc_id;
  j["title"] = r.title;
  j["authors"] = r.authors;
  j["year"] = r.year;
  if (r.venue) j["venue"] = *r.venue;
  j["abstract"] = r.abstract;
  j["research_questions"] = r.research_questions;
  j["curated_keywords"] = r.curated_keywords;
  if (r.source) j["source"] = *r.source;
  return j;
}

Json results_to_json(const std::vector<SimilarityResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) {
    Json j;
    j["doc_id"] = r.doc_id;
    j["similarity"] = r.similarity;
    j["distance"] = r.distance;
    j["rank"] = r.rank;
    j["coverage"] = r.coverage;
    out.push_back(std::move(j));
  }
  return out;
}

Json skipped_to_json(const std::vector<SkippedDocument>& skipped) {
  Json out = Json::array();
  for (const auto& s : skipped) {
    Json j;
    j["doc_id"] = s.doc_id;
    j["reason"] = s.reason;
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const RankedList& ranked) {
  Json j;
  j["query"]["mode"] = std::string(to_string(ranked.query.mode));
  j["query"]["model"] = ranked.query.model_name;
  j["query"]["digest"] = ranked.query.digest;
  j["results"] = results_to_json(ranked.results);
  j["skipped"] = skipped_to_json(ranked.skipped);
  return j;
}

Json to_json(const EvaluationReport& report) {
  Json j;
  j["mode"] = std::string(to_string(report.mode));
  j["k_values"] = report.k_values;
  j["per_model"] = Json::array();
  for (const auto& m : report.per_model) {
    Json row;
    row["model_name"] = m.model_name;
    row["spearman_rho"] = m.spearman_rho ? Json(*m.spearman_rho) : Json(nullptr);
    if (!m.rho_note.empty()) row["spearman_note"] = m.rho_note;
    row["precision_at_k"] = Json::object();
    for (const auto& [k, v] : m.precision_at_k) row["precision_at_k"][std::to_string(k)] = v;
    row["recall_at_k"] = Json::object();
    for (const auto& [k, v] : m.recall_at_k) row["recall_at_k"][std::to_string(k)] = v;
    row["n_scored"] = m.n_scored;
    row["n_skipped"] = m.n_skipped;
    if (m.error) row["error"] = *m.error;
    j["per_model"].push_back(std::move(row));
  }
  return j;
}

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace slrplan
