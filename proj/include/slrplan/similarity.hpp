// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_SIMILARITY_HPP
#define SLRPLAN_SIMILARITY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "slrplan/embedding.hpp"
#include "slrplan/error.hpp"
#include "slrplan/text_pipeline.hpp"

namespace slrplan {

struct Corpus;

/// Cosine of the angle between two vectors, clamped to [-1, 1].
///
/// Throws Error(DimensionMismatch) on differing sizes and Error(ZeroVector)
/// when either norm is zero. The result is symmetric in its arguments.
template <typename DerivedA, typename DerivedB>
double cosine(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine: vectors differ in dimension");
  }
  const double na2 = static_cast<double>(a.squaredNorm());
  const double nb2 = static_cast<double>(b.squaredNorm());
  if (na2 == 0.0 || nb2 == 0.0) {
    throw Error(ErrorCode::ZeroVector, "cosine: zero-length vector");
  }
  // sqrt of the product keeps cosine(a, a) == 1 exactly.
  const double dot = static_cast<double>(a.dot(b));
  return std::clamp(dot / std::sqrt(na2 * nb2), -1.0, 1.0);
}

/// 1 - cosine(a, b), in [0, 2].
template <typename DerivedA, typename DerivedB>
double distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return 1.0 - cosine(a, b);
}

enum class QueryMode { ResearchQuestions, SeedAbstract, Vector };
enum class Aggregation { Concat, MaxPerQuestion };

std::string_view to_string(QueryMode mode) noexcept;
std::string_view to_string(Aggregation aggregation) noexcept;
Aggregation aggregation_from_string(std::string_view text);

struct SimilarityResult {
  std::string doc_id;
  double similarity = 0.0;
  double distance = 0.0;
  int rank = 0;
  double coverage = 0.0;

  friend bool operator==(const SimilarityResult&, const SimilarityResult&) = default;
};

struct SkippedDocument {
  std::string doc_id;
  std::string reason;

  friend bool operator==(const SkippedDocument&, const SkippedDocument&) = default;
};

struct QueryDescriptor {
  QueryMode mode = QueryMode::Vector;
  std::string model_name;
  std::string digest;  // 16 hex digits, FNV-1a of the query text

  friend bool operator==(const QueryDescriptor&, const QueryDescriptor&) = default;
};

struct RankedList {
  QueryDescriptor query;
  std::vector<SimilarityResult> results;  // sorted by (distance, doc_id)
  std::vector<SkippedDocument> skipped;

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Vectorized corpus under one model. Documents that could not be vectorized
/// are kept in `skipped` so a ranking reports them.
struct CorpusVectors {
  std::string model_name;
  std::vector<DocumentVector> vectors;
  std::vector<SkippedDocument> skipped;
};

// Vectorizes every record from its curated keywords, preprocessing the
// abstract with the corpus configuration when no curated keywords are stored.
CorpusVectors vectorize_corpus(const Corpus& corpus, const EmbeddingModel& model,
                               const TextResources& resources);

std::string query_digest(std::string_view text);

// Scores every corpus vector against the query; zero-length corpus vectors are
// moved to `skipped`. Throws ZeroVector (query), EmptyCorpus, ModelMismatch.
RankedList rank_by_query(const DocumentVector& query, const CorpusVectors& corpus);

// Scores every corpus vector by its best similarity over several query
// vectors (distance = 1 - max similarity).
RankedList rank_by_best_query(const std::vector<DocumentVector>& queries, const CorpusVectors& corpus);

// Research questions as the query. Blank questions are ignored; EmptyQuery if
// none remain. In MaxPerQuestion mode questions without coverage are dropped,
// NoCoverage if no question has any.
RankedList rank_by_research_questions(const std::vector<std::string>& questions,
                                      const CorpusVectors& corpus, const EmbeddingModel& model,
                                      const TextResources& resources, const PipelineConfig& config,
                                      Aggregation aggregation = Aggregation::Concat);

RankedList rank_by_research_questions(const std::vector<std::string>& questions, const Corpus& corpus,
                                      const EmbeddingModel& model, const TextResources& resources,
                                      Aggregation aggregation = Aggregation::Concat);

RankedList rank_by_seed_abstract(std::string_view seed, const CorpusVectors& corpus,
                                 const EmbeddingModel& model, const TextResources& resources,
                                 const PipelineConfig& config);

RankedList rank_by_seed_abstract(std::string_view seed, const Corpus& corpus, const EmbeddingModel& model,
                                 const TextResources& resources);

}  // namespace slrplan

#endif  // SLRPLAN_SIMILARITY_HPP
