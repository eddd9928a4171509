// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/similarity.hpp"

#include <cstdint>
#include <cstdio>

#include "slrplan/corpus.hpp"

namespace slrplan {

namespace {

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

void check_model(const std::string& query_model, const CorpusVectors& corpus) {
  if (!query_model.empty() && !corpus.model_name.empty() && query_model != corpus.model_name) {
    throw Error(ErrorCode::ModelMismatch, "query vectorized with '" + query_model +
                                              "' but corpus with '" + corpus.model_name + "'");
  }
}

template <typename Score>
RankedList rank_with(const CorpusVectors& corpus, Score&& best_similarity) {
  if (corpus.vectors.empty() && corpus.skipped.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "cannot rank an empty corpus");
  }
  RankedList ranked;
  ranked.query.model_name = corpus.model_name;
  ranked.skipped = corpus.skipped;
  ranked.results.reserve(corpus.vectors.size());
  for (const auto& doc : corpus.vectors) {
    if (doc.vector.norm() == 0.0) {
      ranked.skipped.push_back({doc.source_id, "ZeroVector: document vector has zero length"});
      continue;
    }
    SimilarityResult r;
    r.doc_id = doc.source_id;
    r.similarity = best_similarity(doc);
    r.distance = 1.0 - r.similarity;
    r.coverage = doc.coverage;
    ranked.results.push_back(std::move(r));
  }
  std::sort(ranked.results.begin(), ranked.results.end(), [](const SimilarityResult& a, const SimilarityResult& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.doc_id < b.doc_id;
  });
  for (std::size_t i = 0; i < ranked.results.size(); ++i) ranked.results[i].rank = static_cast<int>(i) + 1;
  std::sort(ranked.skipped.begin(), ranked.skipped.end(),
            [](const SkippedDocument& a, const SkippedDocument& b) { return a.doc_id < b.doc_id; });
  return ranked;
}

DocumentVector vectorize_query(std::string_view text, std::string id, const EmbeddingModel& model,
                               const TextResources& resources, const PipelineConfig& config) {
  const auto doc = preprocess(text, id, resources, config);
  if (doc.ngrams.empty()) {
    throw Error(ErrorCode::NoCoverage, "query has no keywords after preprocessing");
  }
  try {
    return vectorize_document(model, doc.ngrams, std::move(id));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoCoverage) {
      throw Error(ErrorCode::NoCoverage, "query has no terms in the vocabulary of model '" + model.name() + "'");
    }
    throw;
  }
}

}  // namespace

std::string_view to_string(QueryMode mode) noexcept {
  switch (mode) {
    case QueryMode::ResearchQuestions:
      return "research_questions";
    case QueryMode::SeedAbstract:
      return "seed_abstract";
    case QueryMode::Vector:
      return "vector";
  }
  return "vector";
}

std::string_view to_string(Aggregation aggregation) noexcept {
  return aggregation == Aggregation::Concat ? "concat" : "max_per_question";
}

Aggregation aggregation_from_string(std::string_view text) {
  if (text == "concat") return Aggregation::Concat;
  if (text == "max_per_question") return Aggregation::MaxPerQuestion;
  throw Error(ErrorCode::InvalidConfig, "unknown aggregation '" + std::string(text) + "'");
}

std::string query_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CorpusVectors vectorize_corpus(const Corpus& corpus, const EmbeddingModel& model,
                               const TextResources& resources) {
  CorpusVectors out;
  out.model_name = model.name();
  out.vectors.reserve(corpus.records.size());
  for (const auto& record : corpus.records) {
    std::vector<std::string> ngrams = record.curated_keywords;
    if (ngrams.empty()) {
      ngrams = preprocess(record.abstract, record.doc_id, resources, corpus.pipeline.config).ngrams;
    }
    if (ngrams.empty()) {
      out.skipped.push_back({record.doc_id, "NoCoverage: abstract has no keywords"});
      continue;
    }
    try {
      out.vectors.push_back(vectorize_document(model, ngrams, record.doc_id));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCoverage) throw;
      out.skipped.push_back({record.doc_id, "NoCoverage: no keyword in model vocabulary"});
    }
  }
  return out;
}

RankedList rank_by_query(const DocumentVector& query, const CorpusVectors& corpus) {
  check_model(query.model_name, corpus);
  if (query.vector.size() == 0 || query.vector.norm() == 0.0) {
    throw Error(ErrorCode::ZeroVector, "query vector has zero length");
  }
  RankedList ranked = rank_with(corpus, [&](const DocumentVector& doc) { return cosine(query.vector, doc.vector); });
  ranked.query.mode = QueryMode::Vector;
  return ranked;
}

RankedList rank_by_best_query(const std::vector<DocumentVector>& queries, const CorpusVectors& corpus) {
  if (queries.empty()) throw Error(ErrorCode::EmptyQuery, "no query vectors");
  for (const auto& q : queries) {
    check_model(q.model_name, corpus);
    if (q.vector.size() == 0 || q.vector.norm() == 0.0) {
      throw Error(ErrorCode::ZeroVector, "query vector has zero length");
    }
  }
  RankedList ranked = rank_with(corpus, [&](const DocumentVector& doc) {
    double best = -1.0;
    for (const auto& q : queries) best = std::max(best, cosine(q.vector, doc.vector));
    return best;
  });
  ranked.query.mode = QueryMode::Vector;
  return ranked;
}

RankedList rank_by_research_questions(const std::vector<std::string>& questions, const CorpusVectors& corpus,
                                      const EmbeddingModel& model, const TextResources& resources,
                                      const PipelineConfig& config, Aggregation aggregation) {
  std::vector<std::string> kept;
  for (const auto& q : questions) {
    if (!is_blank(q)) kept.push_back(q);
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyQuery, "no non-empty research question given");

  std::string digest_text;
  for (const auto& q : kept) {
    if (!digest_text.empty()) digest_text += '\n';
    digest_text += q;
  }

  RankedList ranked;
  if (aggregation == Aggregation::Concat) {
    std::string joined;
    for (const auto& q : kept) {
      if (!joined.empty()) joined += ' ';
      joined += q;
    }
    ranked = rank_by_query(vectorize_query(joined, "query", model, resources, config), corpus);
  } else {
    std::vector<DocumentVector> vectors;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      try {
        vectors.push_back(vectorize_query(kept[i], "q" + std::to_string(i + 1), model, resources, config));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCoverage) throw;
      }
    }
    if (vectors.empty()) {
      throw Error(ErrorCode::NoCoverage, "no research question has terms in the vocabulary of model '" +
                                             model.name() + "'");
    }
    ranked = rank_by_best_query(vectors, corpus);
  }
  ranked.query.mode = QueryMode::ResearchQuestions;
  ranked.query.model_name = model.name();
  ranked.query.digest = query_digest(digest_text);
  return ranked;
}

RankedList rank_by_research_questions(const std::vector<std::string>& questions, const Corpus& corpus,
                                      const EmbeddingModel& model, const TextResources& resources,
                                      Aggregation aggregation) {
  return rank_by_research_questions(questions, vectorize_corpus(corpus, model, resources), model, resources,
                                    corpus.pipeline.config, aggregation);
}

RankedList rank_by_seed_abstract(std::string_view seed, const CorpusVectors& corpus, const EmbeddingModel& model,
                                 const TextResources& resources, const PipelineConfig& config) {
  if (is_blank(seed)) throw Error(ErrorCode::EmptyQuery, "seed abstract is empty");
  RankedList ranked = rank_by_query(vectorize_query(seed, "seed", model, resources, config), corpus);
  ranked.query.mode = QueryMode::SeedAbstract;
  ranked.query.model_name = model.name();
  ranked.query.digest = query_digest(seed);
  return ranked;
}

RankedList rank_by_seed_abstract(std::string_view seed, const Corpus& corpus, const EmbeddingModel& model,
                                 const TextResources& resources) {
  return rank_by_seed_abstract(seed, vectorize_corpus(corpus, model, resources), model, resources,
                               corpus.pipeline.config);
}

}  // namespace slrplan
