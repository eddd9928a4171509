// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_CORPUS_HPP
#define SLRPLAN_CORPUS_HPP

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slrplan/text_pipeline.hpp"

namespace slrplan {

struct SlrRecord {
  std::string doc_id;
  std::string title;
  std::vector<std::string> authors;
  int year = 0;
  std::optional<std::string> venue;
  std::string abstract;
  std::vector<std::string> research_questions;
  std::vector<std::string> curated_keywords;  // preprocess(abstract).ngrams
  std::optional<std::string> source;

  friend bool operator==(const SlrRecord&, const SlrRecord&) = default;
};

/// Pipeline configuration plus the language data it was run with. Empty
/// paths select the bundled files.
struct PipelineSetup {
  PipelineConfig config;
  std::string lemma_dictionary;
  std::string pos_lexicon;

  friend bool operator==(const PipelineSetup&, const PipelineSetup&) = default;
};

struct Corpus {
  std::vector<SlrRecord> records;  // sorted by doc_id, ids unique
  PipelineSetup pipeline;
  std::string curation_timestamp;  // ISO-8601 UTC

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

TextResources load_resources(const PipelineSetup& setup);

// Pipeline configuration file (JSON object). Every key is optional:
//   lowercase, strip_numbers, ngram_max, keyword_mode,
//   stopwords (array) or stopwords_file (path), lemma_dictionary, pos_lexicon
// Relative paths resolve against the file's directory. Missing keys take the
// defaults, including the bundled stop-word list.
PipelineSetup load_pipeline_setup(const std::filesystem::path& path);
PipelineSetup default_pipeline_setup();

// Fills curated_keywords for every record.
void curate(Corpus& corpus, const TextResources& resources);

// Reads line-delimited JSON records (keys doc_id, title, year, abstract
// required; authors, venue, research_questions, curated_keywords, source
// optional), validates and curates them. A saved-corpus header line is
// skipped. Throws DuplicateId, MissingField(line), MalformedRecord(line).
Corpus ingest(std::istream& in, const PipelineSetup& setup, const TextResources& resources,
              std::string curation_timestamp = {});
Corpus ingest(const std::filesystem::path& path, const PipelineSetup& setup,
              const TextResources& resources, std::string curation_timestamp = {});

const SlrRecord* get(const Corpus& corpus, std::string_view doc_id);

// Canonical form: one header line carrying the pipeline setup and timestamp,
// then one record per line ordered by doc_id with a fixed key order.
void save(const Corpus& corpus, std::ostream& out);
void save(const Corpus& corpus, const std::filesystem::path& path);
Corpus load(std::istream& in);
Corpus load(const std::filesystem::path& path);

std::string utc_timestamp_now();

}  // namespace slrplan

#endif  // SLRPLAN_CORPUS_HPP
