// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_EMBEDDING_HPP
#define SLRPLAN_EMBEDDING_HPP

#include <Eigen/Core>

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slrplan {

/// Immutable token -> vector table. Vectors are stored as rows of a
/// row-major matrix, so a lookup is a zero-copy map over one row.
template <typename Scalar>
class BasicEmbeddingModel {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using ConstVectorMap = Eigen::Map<const Vector>;

  // `tokens[i]` owns row i of `vectors`. Throws Error(EmptyModel) when there
  // are no rows and Error(DimensionMismatch) when sizes disagree.
  BasicEmbeddingModel(std::string name, std::vector<std::string> tokens, Matrix vectors,
                      std::string source_path = {}, std::size_t duplicate_tokens = 0);

  const std::string& name() const noexcept { return name_; }
  const std::string& source_path() const noexcept { return source_path_; }
  Eigen::Index dimension() const noexcept { return vectors_.cols(); }
  std::size_t vocab_size() const noexcept { return tokens_.size(); }
  // Number of repeated tokens seen while loading (last occurrence kept).
  std::size_t duplicate_tokens() const noexcept { return duplicate_tokens_; }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const Matrix& vectors() const noexcept { return vectors_; }

  // Exact, case-sensitive match.
  std::optional<ConstVectorMap> lookup(std::string_view token) const;

  // Copy with every vector multiplied by `factor`.
  BasicEmbeddingModel scaled(Scalar factor, std::string name) const;

 private:
  std::string name_;
  std::string source_path_;
  std::vector<std::string> tokens_;
  Matrix vectors_;
  std::unordered_map<std::string, Eigen::Index> index_;
  std::size_t duplicate_tokens_ = 0;
};

using EmbeddingModel = BasicEmbeddingModel<double>;

/// Document representation under one model: the mean of the vectors obtained
/// for its n-grams, plus how many n-grams contributed.
template <typename Scalar>
struct BasicDocumentVector {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::string source_id;
  std::string model_name;
  Vector vector;
  std::size_t matched_ngrams = 0;
  std::size_t total_ngrams = 0;
  double coverage = 0.0;
};

using DocumentVector = BasicDocumentVector<double>;

// Parses the whitespace-separated text format "token v1 ... vd", with an
// optional leading "count dim" header line.
//
// Errors: DimensionMismatch / MalformedNumber carry the 1-based line number;
// EmptyModel when no data line is present.
template <typename Scalar>
BasicEmbeddingModel<Scalar> read_text_model(std::istream& in, std::string name,
                                            std::string source_path = {});

template <typename Scalar = double>
BasicEmbeddingModel<Scalar> load_text_model(const std::filesystem::path& path, std::string name);

// Writes "count dim" followed by one line per token, components printed with
// enough digits to round-trip exactly.
template <typename Scalar>
void write_text_model(std::ostream& out, const BasicEmbeddingModel<Scalar>& model);

// For each n-gram: look up the underscore-joined phrase; failing that, average
// the constituent unigrams that are present; failing that, count a miss. The
// document vector is the mean over n-grams that produced a vector.
// Throws Error(NoCoverage) when nothing matched.
template <typename Scalar>
BasicDocumentVector<Scalar> vectorize_document(const BasicEmbeddingModel<Scalar>& model,
                                               const std::vector<std::string>& ngrams,
                                               std::string source_id = {});

extern template class BasicEmbeddingModel<float>;
extern template class BasicEmbeddingModel<double>;

struct ModelSummary {
  std::string name;
  Eigen::Index dimension = 0;
  std::size_t vocab_size = 0;

  friend bool operator==(const ModelSummary&, const ModelSummary&) = default;
};

/// Name -> model map. Models are shared read-only once added.
class ModelRegistry {
 public:
  // Throws Error(DuplicateModel) if the name is taken.
  void add(std::shared_ptr<const EmbeddingModel> model);
  void add(EmbeddingModel model) { add(std::make_shared<const EmbeddingModel>(std::move(model))); }

  // Throws Error(UnknownModel).
  std::shared_ptr<const EmbeddingModel> get(std::string_view name) const;
  bool contains(std::string_view name) const;
  bool empty() const noexcept { return models_.empty(); }
  std::size_t size() const noexcept { return models_.size(); }

  std::vector<std::string> names() const;
  const std::map<std::string, std::shared_ptr<const EmbeddingModel>, std::less<>>& models() const {
    return models_;
  }

 private:
  std::map<std::string, std::shared_ptr<const EmbeddingModel>, std::less<>> models_;
};

std::vector<ModelSummary> list_models(const ModelRegistry& registry);

// Model files in a directory are those ending in .txt or .vec; the model name
// is the file stem.
std::filesystem::path find_model_file(const std::filesystem::path& dir, std::string_view name);
ModelRegistry load_models_dir(const std::filesystem::path& dir);

}  // namespace slrplan

#endif  // SLRPLAN_EMBEDDING_HPP
