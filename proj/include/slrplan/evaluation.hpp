// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_EVALUATION_HPP
#define SLRPLAN_EVALUATION_HPP

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slrplan/corpus.hpp"
#include "slrplan/embedding.hpp"
#include "slrplan/similarity.hpp"

namespace slrplan {

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> fractional_ranks(std::span<const double> values);

// Spearman's rho as the Pearson correlation of fractional ranks.
// Throws LengthMismatch, TooFew (fewer than 2 pairs), ConstantInput.
double spearman(std::span<const double> x, std::span<const double> y);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  int relevant_retrieved = 0;
};

// Top-k of `ranked.results` against binary labels. Skipped documents are
// never retrieved. Throws NoPositives, KOutOfRange (k < 1 or k > results).
PrecisionRecall precision_recall_at_k(const RankedList& ranked, const std::map<std::string, int>& labels,
                                      int k);

struct AnnotatedCorpus {
  Corpus corpus;
  std::map<std::string, int> labels;      // doc_id -> 0/1
  std::map<std::string, double> ratings;  // subset of labels' keys
};

// CSV with the mandatory header "doc_id,label,rating"; the rating column may
// be left empty. Throws MalformedAnnotation(line), UnknownDocument,
// DuplicateId.
AnnotatedCorpus annotate(Corpus corpus, std::istream& annotations);
AnnotatedCorpus annotate(Corpus corpus, const std::filesystem::path& annotations);

struct QueryInputs {
  std::vector<std::string> questions;  // research-question mode
  std::string seed;                    // seed-abstract mode
  Aggregation aggregation = Aggregation::Concat;
};

struct ModelEvaluation {
  std::string model_name;
  std::optional<double> spearman_rho;  // empty when undefined
  std::string rho_note;                // why rho is undefined
  std::map<int, double> precision_at_k;
  std::map<int, double> recall_at_k;
  std::size_t n_scored = 0;
  std::size_t n_skipped = 0;
  std::optional<std::string> error;  // the whole row failed

  friend bool operator==(const ModelEvaluation&, const ModelEvaluation&) = default;
};

struct EvaluationReport {
  QueryMode mode = QueryMode::ResearchQuestions;
  std::vector<int> k_values;
  std::vector<ModelEvaluation> per_model;  // sorted by model name
};

inline const std::vector<int>& default_k_values() {
  static const std::vector<int> k{5, 10, 20};
  return k;
}

// Ranks the corpus under every model and scores the ranking. Rho compares
// similarity with graded ratings when any are present, else with labels.
// Cutoffs larger than the number of scored documents are left out of that
// model's row. A failing model yields an error row; the others still run.
EvaluationReport evaluate_models(const AnnotatedCorpus& annotated, const ModelRegistry& models,
                                 QueryMode mode, const QueryInputs& inputs,
                                 const std::vector<int>& k_values, const TextResources& resources);

// Aligned plain-text table for terminals.
std::string format_table(const EvaluationReport& report);

}  // namespace slrplan

#endif  // SLRPLAN_EVALUATION_HPP
