// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "slrplan/error.hpp"

namespace slrplan {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    const auto end = std::min(line.find(' ', pos), line.size());
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

bool parse_count(std::string_view field, long long& out) {
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() && out >= 0;
}

template <typename Scalar>
bool parse_real(std::string_view field, Scalar& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() && std::isfinite(out);
}

std::string line_error(std::string_view what, std::size_t line_no) {
  return std::string(what) + " at line " + std::to_string(line_no);
}

}  // namespace

// ---------------------------------------------------------------------------
// BasicEmbeddingModel

template <typename Scalar>
BasicEmbeddingModel<Scalar>::BasicEmbeddingModel(std::string name, std::vector<std::string> tokens,
                                                 Matrix vectors, std::string source_path,
                                                 std::size_t duplicate_tokens)
    : name_(std::move(name)),
      source_path_(std::move(source_path)),
      tokens_(std::move(tokens)),
      vectors_(std::move(vectors)),
      duplicate_tokens_(duplicate_tokens) {
  if (tokens_.empty() || vectors_.rows() == 0 || vectors_.cols() == 0) {
    throw Error(ErrorCode::EmptyModel, "embedding model '" + name_ + "' has no vectors");
  }
  if (static_cast<Eigen::Index>(tokens_.size()) != vectors_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "embedding model '" + name_ + "': token count differs from vector count");
  }
  if (!vectors_.allFinite()) {
    throw Error(ErrorCode::MalformedNumber, "embedding model '" + name_ + "' has non-finite components");
  }
  index_.reserve(tokens_.size());
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    if (!index_.emplace(tokens_[static_cast<std::size_t>(i)], i).second) {
      throw Error(ErrorCode::MalformedRecord,
                  "embedding model '" + name_ + "': duplicate token '" + tokens_[static_cast<std::size_t>(i)] + "'");
    }
  }
}

template <typename Scalar>
auto BasicEmbeddingModel<Scalar>::lookup(std::string_view token) const -> std::optional<ConstVectorMap> {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return ConstVectorMap(vectors_.row(it->second).data(), vectors_.cols());
}

template <typename Scalar>
BasicEmbeddingModel<Scalar> BasicEmbeddingModel<Scalar>::scaled(Scalar factor, std::string name) const {
  return BasicEmbeddingModel(std::move(name), tokens_, vectors_ * factor, source_path_, duplicate_tokens_);
}

template class BasicEmbeddingModel<float>;
template class BasicEmbeddingModel<double>;

// ---------------------------------------------------------------------------
// Text format

template <typename Scalar>
BasicEmbeddingModel<Scalar> read_text_model(std::istream& in, std::string name, std::string source_path) {
  std::vector<std::string> tokens;
  std::vector<Scalar> components;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t duplicates = 0;
  Eigen::Index dim = 0;
  std::optional<long long> header_dim;
  bool first_content_line = true;

  std::string line;
  std::size_t line_no = 0;
  std::vector<Scalar> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      long long count = 0;
      long long header_d = 0;
      if (fields.size() == 2 && parse_count(fields[0], count) && parse_count(fields[1], header_d)) {
        header_dim = header_d;
        continue;
      }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(fields.size()) - 1;
    if (dim == 0) {
      if (n < 1 || (header_dim && *header_dim != n)) {
        throw Error(ErrorCode::DimensionMismatch, line_error("dimension mismatch", line_no), line_no);
      }
      dim = n;
    } else if (n != dim) {
      throw Error(ErrorCode::DimensionMismatch, line_error("dimension mismatch", line_no), line_no);
    }

    row.resize(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (!parse_real(fields[static_cast<std::size_t>(j) + 1], row[static_cast<std::size_t>(j)])) {
        throw Error(ErrorCode::MalformedNumber, line_error("malformed number", line_no), line_no);
      }
    }

    std::string token(fields[0]);
    if (auto it = seen.find(token); it != seen.end()) {
      ++duplicates;
      std::copy(row.begin(), row.end(), components.begin() + static_cast<std::ptrdiff_t>(it->second * dim));
      continue;
    }
    seen.emplace(token, tokens.size());
    tokens.push_back(std::move(token));
    components.insert(components.end(), row.begin(), row.end());
  }

  if (tokens.empty()) {
    throw Error(ErrorCode::EmptyModel, "embedding model '" + name + "' has no data lines");
  }
  using Matrix = typename BasicEmbeddingModel<Scalar>::Matrix;
  Matrix vectors = Eigen::Map<const Matrix>(components.data(), static_cast<Eigen::Index>(tokens.size()), dim);
  return BasicEmbeddingModel<Scalar>(std::move(name), std::move(tokens), std::move(vectors),
                                     std::move(source_path), duplicates);
}

template <typename Scalar>
BasicEmbeddingModel<Scalar> load_text_model(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open embedding file " + path.string());
  return read_text_model<Scalar>(in, std::move(name), path.string());
}

template <typename Scalar>
void write_text_model(std::ostream& out, const BasicEmbeddingModel<Scalar>& model) {
  out << model.vocab_size() << ' ' << model.dimension() << '\n';
  char buf[64];
  const auto& vectors = model.vectors();
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    out << model.tokens()[i];
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, vectors(static_cast<Eigen::Index>(i), j));
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

template BasicEmbeddingModel<float> read_text_model<float>(std::istream&, std::string, std::string);
template BasicEmbeddingModel<double> read_text_model<double>(std::istream&, std::string, std::string);
template BasicEmbeddingModel<float> load_text_model<float>(const std::filesystem::path&, std::string);
template BasicEmbeddingModel<double> load_text_model<double>(const std::filesystem::path&, std::string);
template void write_text_model<float>(std::ostream&, const BasicEmbeddingModel<float>&);
template void write_text_model<double>(std::ostream&, const BasicEmbeddingModel<double>&);

// ---------------------------------------------------------------------------
// Vectorization

template <typename Scalar>
BasicDocumentVector<Scalar> vectorize_document(const BasicEmbeddingModel<Scalar>& model,
                                               const std::vector<std::string>& ngrams,
                                               std::string source_id) {
  using Vector = typename BasicDocumentVector<Scalar>::Vector;
  const Eigen::Index d = model.dimension();
  Vector sum = Vector::Zero(d);
  Vector gram_sum(d);
  std::size_t matched = 0;

  for (const auto& gram : ngrams) {
    if (gram.find(' ') == std::string::npos) {
      if (auto v = model.lookup(gram)) {
        sum += *v;
        ++matched;
      }
      continue;
    }
    std::string phrase = gram;
    std::replace(phrase.begin(), phrase.end(), ' ', '_');
    if (auto v = model.lookup(phrase)) {
      sum += *v;
      ++matched;
      continue;
    }
    gram_sum.setZero();
    std::size_t found = 0;
    std::size_t pos = 0;
    while (pos <= gram.size()) {
      const auto end = std::min(gram.find(' ', pos), gram.size());
      if (end > pos) {
        if (auto v = model.lookup(std::string_view(gram).substr(pos, end - pos))) {
          gram_sum += *v;
          ++found;
        }
      }
      pos = end + 1;
    }
    if (found > 0) {
      sum += gram_sum / static_cast<Scalar>(found);
      ++matched;
    }
  }

  if (matched == 0) {
    throw Error(ErrorCode::NoCoverage,
                "no n-gram of '" + source_id + "' is in the vocabulary of model '" + model.name() + "'");
  }
  BasicDocumentVector<Scalar> doc;
  doc.source_id = std::move(source_id);
  doc.model_name = model.name();
  doc.vector = sum / static_cast<Scalar>(matched);
  doc.matched_ngrams = matched;
  doc.total_ngrams = ngrams.size();
  doc.coverage = static_cast<double>(matched) / static_cast<double>(ngrams.size());
  return doc;
}

template BasicDocumentVector<float> vectorize_document<float>(const BasicEmbeddingModel<float>&,
                                                              const std::vector<std::string>&, std::string);
template BasicDocumentVector<double> vectorize_document<double>(const BasicEmbeddingModel<double>&,
                                                                const std::vector<std::string>&, std::string);

// ---------------------------------------------------------------------------
// Registry

void ModelRegistry::add(std::shared_ptr<const EmbeddingModel> model) {
  const std::string name = model->name();
  if (!models_.emplace(name, std::move(model)).second) {
    throw Error(ErrorCode::DuplicateModel, "model name '" + name + "' is already registered");
  }
}

std::shared_ptr<const EmbeddingModel> ModelRegistry::get(std::string_view name) const {
  auto it = models_.find(name);
  if (it == models_.end()) {
    throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(name) + "'");
  }
  return it->second;
}

bool ModelRegistry::contains(std::string_view name) const { return models_.find(name) != models_.end(); }

std::vector<std::string> ModelRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(models_.size());
  for (const auto& [name, model] : models_) out.push_back(name);
  return out;
}

std::vector<ModelSummary> list_models(const ModelRegistry& registry) {
  std::vector<ModelSummary> out;
  for (const auto& [name, model] : registry.models()) {
    out.push_back({name, model->dimension(), model->vocab_size()});
  }
  return out;
}

namespace {

bool is_model_file(const std::filesystem::path& p) {
  const auto ext = p.extension();
  return ext == ".txt" || ext == ".vec";
}

}  // namespace

std::filesystem::path find_model_file(const std::filesystem::path& dir, std::string_view name) {
  for (const char* ext : {".txt", ".vec"}) {
    auto candidate = dir / (std::string(name) + ext);
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  throw Error(ErrorCode::UnknownModel,
              "no model file for '" + std::string(name) + "' in " + dir.string());
}

ModelRegistry load_models_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::IoFailure, "models directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_model_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  ModelRegistry registry;
  for (const auto& file : files) {
    registry.add(load_text_model<double>(file, file.stem().string()));
  }
  return registry;
}

}  // namespace slrplan
