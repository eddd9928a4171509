// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_TESTS_FIXTURES_HPP
#define SLRPLAN_TESTS_FIXTURES_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slrplan/corpus.hpp"
#include "slrplan/embedding.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return SLRPLAN_TEST_FIXTURES; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("slrplan-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline slrplan::EmbeddingModel model_from(const std::string& name,
                                          const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  std::vector<std::string> tokens;
  slrplan::EmbeddingModel::Matrix m(static_cast<Eigen::Index>(rows.size()),
                                    static_cast<Eigen::Index>(rows.front().second.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    tokens.push_back(rows[i].first);
    for (std::size_t j = 0; j < rows[i].second.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i].second[j];
    }
  }
  return slrplan::EmbeddingModel(name, std::move(tokens), std::move(m));
}

inline slrplan::SlrRecord record(std::string id, std::string abstract) {
  slrplan::SlrRecord r;
  r.doc_id = std::move(id);
  r.title = "Review " + r.doc_id;
  r.year = 2020;
  r.abstract = std::move(abstract);
  return r;
}

/// Two disjoint ten-token vocabularies on orthogonal halves of an 8-d space,
/// five cluster-A documents and fifteen cluster-B documents (three of which
/// borrow one cluster-A token).
struct TwoClusters {
  slrplan::EmbeddingModel model;
  slrplan::Corpus corpus;
  std::map<std::string, int> labels;
  std::vector<std::string> cluster_a;
  std::vector<std::string> cluster_b;
  std::string query;
};

inline TwoClusters two_clusters(unsigned seed = 7) {
  const std::vector<std::string> a{"quorva", "zentak", "plimo", "drakel", "vosk",
                                   "trellon", "mizar", "faldo", "grenth", "yublo"};
  const std::vector<std::string> b{"harnok", "sipra", "kelvo", "brantu", "ozzel",
                                   "wimbra", "clotho", "dravik", "nuvel", "pextra"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (const auto& t : a) {
    std::vector<double> v(8, 0.0);
    for (int j = 0; j < 4; ++j) v[j] = mag(rng);
    rows.emplace_back(t, v);
  }
  for (const auto& t : b) {
    std::vector<double> v(8, 0.0);
    for (int j = 4; j < 8; ++j) v[j] = mag(rng);
    rows.emplace_back(t, v);
  }

  std::uniform_int_distribution<std::size_t> pick(0, 9);
  auto words = [&](const std::vector<std::string>& vocab, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (s.empty() ? "" : " ") + vocab[pick(rng)];
    return s;
  };

  slrplan::Corpus corpus;
  corpus.pipeline = slrplan::default_pipeline_setup();
  corpus.curation_timestamp = "2026-01-01T00:00:00Z";
  std::map<std::string, int> labels;
  for (int i = 1; i <= 5; ++i) {
    const std::string id = "a" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    corpus.records.push_back(record(id, "The " + words(a, 6) + "."));
    labels[id] = 1;
  }
  for (int i = 1; i <= 15; ++i) {
    const std::string id = "b" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    std::string text = words(b, 6);
    if (i <= 3) text += " " + words(a, 1);
    corpus.records.push_back(record(id, "Of " + text + "!"));
    labels[id] = 0;
  }
  slrplan::curate(corpus, slrplan::load_resources(corpus.pipeline));
  return {model_from("clusters", rows), std::move(corpus), std::move(labels), a, b,
          "How do " + a[0] + " and " + a[1] + " relate to " + a[2] + " " + a[3] + "?"};
}

}  // namespace fixtures

#endif  // SLRPLAN_TESTS_FIXTURES_HPP
