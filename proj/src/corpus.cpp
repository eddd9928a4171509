// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "slrplan/error.hpp"
#include "slrplan/json_io.hpp"

namespace slrplan {

namespace {

constexpr std::string_view kFormatName = "slrplan-corpus";
constexpr int kFormatVersion = 1;

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::MalformedRecord, at_line(line_no) + what, line_no);
}

[[noreturn]] void missing(std::size_t line_no, std::string_view field) {
  throw Error(ErrorCode::MissingField, at_line(line_no) + "missing field '" + std::string(field) + "'",
              line_no);
}

std::string required_string(const Json& j, std::string_view key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) missing(line_no, key);
  if (!it->is_string()) malformed(line_no, "field '" + std::string(key) + "' must be a string");
  std::string value = it->get<std::string>();
  if (value.find_first_not_of(" \t\r\n") == std::string::npos) missing(line_no, key);
  return value;
}

std::optional<std::string> optional_string(const Json& j, std::string_view key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(line_no, "field '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& j, std::string_view key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_array()) malformed(line_no, "field '" + std::string(key) + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : *it) {
    if (!item.is_string()) malformed(line_no, "field '" + std::string(key) + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

SlrRecord record_from_json(const Json& j, std::size_t line_no) {
  if (!j.is_object()) malformed(line_no, "record is not an object");
  SlrRecord r;
  r.doc_id = required_string(j, "doc_id", line_no);
  r.title = required_string(j, "title", line_no);
  auto year = j.find("year");
  if (year == j.end() || year->is_null()) missing(line_no, "year");
  if (!year->is_number_integer()) malformed(line_no, "field 'year' must be an integer");
  r.year = year->get<int>();
  r.abstract = required_string(j, "abstract", line_no);
  r.authors = string_list(j, "authors", line_no);
  r.venue = optional_string(j, "venue", line_no);
  r.research_questions = string_list(j, "research_questions", line_no);
  r.curated_keywords = string_list(j, "curated_keywords", line_no);
  r.source = optional_string(j, "source", line_no);
  return r;
}

bool is_header(const Json& j) { return j.is_object() && j.contains("format"); }

template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      malformed(line_no, std::string("invalid JSON: ") + e.what());
    }
    fn(j, line_no);
  }
}

void sort_and_check_ids(std::vector<SlrRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const SlrRecord& a, const SlrRecord& b) { return a.doc_id < b.doc_id; });
  auto dup = std::adjacent_find(records.begin(), records.end(),
                                [](const SlrRecord& a, const SlrRecord& b) { return a.doc_id == b.doc_id; });
  if (dup != records.end()) {
    throw Error(ErrorCode::DuplicateId, "duplicate doc_id '" + dup->doc_id + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal();
}

}  // namespace

TextResources load_resources(const PipelineSetup& setup) {
  const auto dir = bundled_data_dir();
  return {load_lemma_dictionary(setup.lemma_dictionary.empty() ? dir / "lemmas.tsv"
                                                               : std::filesystem::path(setup.lemma_dictionary)),
          load_pos_lexicon(setup.pos_lexicon.empty() ? dir / "pos_lexicon.tsv"
                                                     : std::filesystem::path(setup.pos_lexicon))};
}

PipelineSetup default_pipeline_setup() { return {default_pipeline_config(), {}, {}}; }

PipelineSetup load_pipeline_setup(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open pipeline config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "pipeline config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "pipeline config must be a JSON object");

  const auto base = path.parent_path();
  try {
    if (auto it = j.find("stopwords_file"); it != j.end()) {
      j["stopwords"] = load_stopwords(resolve(base, it->get<std::string>()));
      j.erase("stopwords_file");
    }
    for (const char* key : {"lemma_dictionary", "pos_lexicon"}) {
      if (auto it = j.find(key); it != j.end() && !it->get<std::string>().empty()) {
        *it = resolve(base, it->get<std::string>()).string();
      }
    }
    return pipeline_setup_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "pipeline config " + path.string() + ": " + e.what());
  }
}

void curate(Corpus& corpus, const TextResources& resources) {
  for (auto& record : corpus.records) {
    record.curated_keywords =
        preprocess(record.abstract, record.doc_id, resources, corpus.pipeline.config).ngrams;
  }
}

Corpus ingest(std::istream& in, const PipelineSetup& setup, const TextResources& resources,
              std::string curation_timestamp) {
  setup.config.validate();
  Corpus corpus;
  corpus.pipeline = setup;
  corpus.curation_timestamp = curation_timestamp.empty() ? utc_timestamp_now() : std::move(curation_timestamp);

  std::set<std::string> ids;
  for_each_json_line(in, [&](const Json& j, std::size_t line_no) {
    if (is_header(j)) return;
    SlrRecord record = record_from_json(j, line_no);
    if (!ids.insert(record.doc_id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate doc_id '" + record.doc_id + "' at line " +
                                              std::to_string(line_no), line_no);
    }
    corpus.records.push_back(std::move(record));
  });
  sort_and_check_ids(corpus.records);
  curate(corpus, resources);
  return corpus;
}

Corpus ingest(const std::filesystem::path& path, const PipelineSetup& setup, const TextResources& resources,
              std::string curation_timestamp) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open corpus input " + path.string());
  return ingest(in, setup, resources, std::move(curation_timestamp));
}

const SlrRecord* get(const Corpus& corpus, std::string_view doc_id) {
  auto it = std::lower_bound(corpus.records.begin(), corpus.records.end(), doc_id,
                             [](const SlrRecord& r, std::string_view id) { return r.doc_id < id; });
  if (it == corpus.records.end() || it->doc_id != doc_id) return nullptr;
  return &*it;
}

void save(const Corpus& corpus, std::ostream& out) {
  Json header;
  header["format"] = kFormatName;
  header["version"] = kFormatVersion;
  header["curation_timestamp"] = corpus.curation_timestamp;
  header["pipeline_config"] = to_json(corpus.pipeline);
  out << header.dump() << '\n';

  std::vector<const SlrRecord*> order;
  order.reserve(corpus.records.size());
  for (const auto& r : corpus.records) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const SlrRecord* a, const SlrRecord* b) { return a->doc_id < b->doc_id; });
  for (const SlrRecord* r : order) out << to_json(*r).dump() << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed while saving corpus");
}

void save(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write corpus file " + path.string());
  save(corpus, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write corpus file " + path.string());
}

Corpus load(std::istream& in) {
  Corpus corpus;
  bool have_header = false;
  std::set<std::string> ids;
  for_each_json_line(in, [&](const Json& j, std::size_t line_no) {
    if (!have_header) {
      if (!is_header(j) || j.value("format", std::string()) != kFormatName) {
        malformed(line_no, "expected corpus header line");
      }
      try {
        corpus.curation_timestamp = j.at("curation_timestamp").get<std::string>();
        corpus.pipeline = pipeline_setup_from_json(j.at("pipeline_config"));
      } catch (const nlohmann::json::exception& e) {
        malformed(line_no, std::string("bad corpus header: ") + e.what());
      } catch (const Error& e) {
        malformed(line_no, std::string("bad corpus header: ") + e.what());
      }
      have_header = true;
      return;
    }
    SlrRecord record = record_from_json(j, line_no);
    if (!ids.insert(record.doc_id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate doc_id '" + record.doc_id + "'", line_no);
    }
    corpus.records.push_back(std::move(record));
  });
  if (!have_header) malformed(1, "empty corpus file");
  sort_and_check_ids(corpus.records);
  return corpus;
}

Corpus load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open corpus file " + path.string());
  return load(in);
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace slrplan
