// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "slrplan/error.hpp"

namespace slrplan {

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "spearman: inputs differ in length");
  }
  if (x.size() < 2) throw Error(ErrorCode::TooFew, "spearman: need at least two pairs");
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  // Fractional ranks always average to (n + 1) / 2.
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ConstantInput, "spearman: an input has constant ranks");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

PrecisionRecall precision_recall_at_k(const RankedList& ranked, const std::map<std::string, int>& labels, int k) {
  const int positives = static_cast<int>(
      std::count_if(labels.begin(), labels.end(), [](const auto& kv) { return kv.second == 1; }));
  if (positives == 0) throw Error(ErrorCode::NoPositives, "no relevant documents in the labels");
  if (k < 1 || static_cast<std::size_t>(k) > ranked.results.size()) {
    throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside 1.." +
                                            std::to_string(ranked.results.size()));
  }
  int hits = 0;
  for (int i = 0; i < k; ++i) {
    auto it = labels.find(ranked.results[static_cast<std::size_t>(i)].doc_id);
    if (it != labels.end() && it->second == 1) ++hits;
  }
  return {static_cast<double>(hits) / k, static_cast<double>(hits) / positives, hits};
}

// ---------------------------------------------------------------------------
// Annotations

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  for (auto& f : fields) {
    const auto a = f.find_first_not_of(" \t");
    const auto b = f.find_last_not_of(" \t");
    f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
  }
  return fields;
}

[[noreturn]] void bad_annotation(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::MalformedAnnotation, "annotations line " + std::to_string(line_no) + ": " + what,
              line_no);
}

}  // namespace

AnnotatedCorpus annotate(Corpus corpus, std::istream& in) {
  AnnotatedCorpus out;
  out.corpus = std::move(corpus);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (!have_header) {
      if (fields != std::vector<std::string>{"doc_id", "label", "rating"}) {
        bad_annotation(line_no, "expected header 'doc_id,label,rating'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) bad_annotation(line_no, "expected doc_id,label[,rating]");
    const std::string& id = fields[0];
    if (id.empty()) bad_annotation(line_no, "empty doc_id");
    if (fields[1] != "0" && fields[1] != "1") bad_annotation(line_no, "label must be 0 or 1");
    if (get(out.corpus, id) == nullptr) {
      throw Error(ErrorCode::UnknownDocument, "annotations line " + std::to_string(line_no) +
                                                  ": doc_id '" + id + "' is not in the corpus", line_no);
    }
    if (!out.labels.emplace(id, fields[1] == "1" ? 1 : 0).second) {
      throw Error(ErrorCode::DuplicateId, "annotations line " + std::to_string(line_no) +
                                              ": doc_id '" + id + "' annotated twice", line_no);
    }
    if (fields.size() == 3 && !fields[2].empty()) {
      double rating = 0.0;
      std::string_view text = fields[2];
      if (text.front() == '+') text.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), rating);
      if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(rating)) {
        bad_annotation(line_no, "rating must be a finite number");
      }
      out.ratings.emplace(id, rating);
    }
  }
  if (!have_header) bad_annotation(1, "missing header 'doc_id,label,rating'");
  return out;
}

AnnotatedCorpus annotate(Corpus corpus, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open annotation file " + path.string());
  return annotate(std::move(corpus), in);
}

// ---------------------------------------------------------------------------
// Model comparison

namespace {

ModelEvaluation evaluate_one(const AnnotatedCorpus& annotated, const EmbeddingModel& model, QueryMode mode,
                             const QueryInputs& inputs, const std::vector<int>& k_values,
                             const TextResources& resources) {
  ModelEvaluation row;
  row.model_name = model.name();
  try {
    const CorpusVectors vectors = vectorize_corpus(annotated.corpus, model, resources);
    const PipelineConfig& config = annotated.corpus.pipeline.config;
    const RankedList ranked =
        mode == QueryMode::SeedAbstract
            ? rank_by_seed_abstract(inputs.seed, vectors, model, resources, config)
            : rank_by_research_questions(inputs.questions, vectors, model, resources, config, inputs.aggregation);
    row.n_scored = ranked.results.size();
    row.n_skipped = ranked.skipped.size();

    const bool graded = !annotated.ratings.empty();
    std::vector<double> scores;
    std::vector<double> human;
    for (const auto& r : ranked.results) {
      if (graded) {
        if (auto it = annotated.ratings.find(r.doc_id); it != annotated.ratings.end()) {
          scores.push_back(r.similarity);
          human.push_back(it->second);
        }
      } else if (auto it = annotated.labels.find(r.doc_id); it != annotated.labels.end()) {
        scores.push_back(r.similarity);
        human.push_back(static_cast<double>(it->second));
      }
    }
    try {
      row.spearman_rho = spearman(scores, human);
    } catch (const Error& e) {
      row.rho_note = std::string(to_string(e.code()));
    }

    for (int k : k_values) {
      if (k < 1 || static_cast<std::size_t>(k) > ranked.results.size()) continue;
      const auto pr = precision_recall_at_k(ranked, annotated.labels, k);
      row.precision_at_k[k] = pr.precision;
      row.recall_at_k[k] = pr.recall;
    }
  } catch (const Error& e) {
    row = ModelEvaluation{};
    row.model_name = model.name();
    row.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return row;
}

}  // namespace

EvaluationReport evaluate_models(const AnnotatedCorpus& annotated, const ModelRegistry& models, QueryMode mode,
                                 const QueryInputs& inputs, const std::vector<int>& k_values,
                                 const TextResources& resources) {
  if (models.empty()) throw Error(ErrorCode::UnknownModel, "no embedding models to evaluate");
  EvaluationReport report;
  report.mode = mode;
  report.k_values = k_values;
  std::sort(report.k_values.begin(), report.k_values.end());
  report.k_values.erase(std::unique(report.k_values.begin(), report.k_values.end()), report.k_values.end());

  std::vector<std::future<ModelEvaluation>> pending;
  for (const auto& [name, model] : models.models()) {
    pending.push_back(std::async(std::launch::async, [&, model = model] {
      return evaluate_one(annotated, *model, mode, inputs, report.k_values, resources);
    }));
  }
  for (auto& f : pending) report.per_model.push_back(f.get());
  return report;
}

std::string format_table(const EvaluationReport& report) {
  std::vector<std::string> header{"model", "rho"};
  for (int k : report.k_values) header.push_back("P@" + std::to_string(k));
  for (int k : report.k_values) header.push_back("R@" + std::to_string(k));
  header.push_back("scored");
  header.push_back("skipped");

  auto fixed = [](double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
  };

  std::vector<std::vector<std::string>> rows{header};
  for (const auto& m : report.per_model) {
    std::vector<std::string> row{m.model_name};
    if (m.error) {
      row.push_back("error: " + *m.error);
      rows.push_back(std::move(row));
      continue;
    }
    row.push_back(m.spearman_rho ? fixed(*m.spearman_rho) : "n/a");
    for (int k : report.k_values) {
      auto it = m.precision_at_k.find(k);
      row.push_back(it == m.precision_at_k.end() ? "-" : fixed(it->second));
    }
    for (int k : report.k_values) {
      auto it = m.recall_at_k.find(k);
      row.push_back(it == m.recall_at_k.end() ? "-" : fixed(it->second));
    }
    row.push_back(std::to_string(m.n_scored));
    row.push_back(std::to_string(m.n_skipped));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    if (row.size() != header.size()) continue;
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      if (row.size() == header.size() && c + 1 < row.size()) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace slrplan
