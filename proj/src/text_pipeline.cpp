// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/text_pipeline.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slrplan/error.hpp"

namespace slrplan {

namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error(ErrorCode::InvalidConfig, "ICU NFC normalizer unavailable");
  }
  return *n;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    fn(line, line_no);
  }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return in;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string_view to_string(KeywordMode mode) noexcept {
  switch (mode) {
    case KeywordMode::PosFiltered:
      return "pos_filtered";
    case KeywordMode::AllContentWords:
      return "all_content_words";
  }
  return "pos_filtered";
}

KeywordMode keyword_mode_from_string(std::string_view text) {
  if (text == "pos_filtered") return KeywordMode::PosFiltered;
  if (text == "all_content_words") return KeywordMode::AllContentWords;
  throw Error(ErrorCode::InvalidConfig, "unknown keyword_mode '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
  if (ngram_max < 1) {
    throw Error(ErrorCode::InvalidConfig, "ngram_max must be >= 1");
  }
  PipelineConfig plain = *this;
  plain.stopword_list.clear();
  for (const auto& word : stopword_list) {
    if (word.empty() || normalize(word, plain) != word) {
      throw Error(ErrorCode::InvalidConfig, "stop word '" + word + "' is not normalized");
    }
  }
}

std::string normalize(std::string_view text, const PipelineConfig& config) {
  if (text.empty()) return {};

  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = nfc().normalize(source, status);
  if (U_FAILURE(status)) composed = source;

  icu::UnicodeString mapped;
  bool pending_space = false;
  for (int32_t i = 0; i < composed.length();) {
    UChar32 c = composed.char32At(i);
    i += U16_LENGTH(c);
    bool keep = false;
    if (u_isalpha(c)) {
      keep = true;
      if (config.lowercase) c = u_tolower(c);
    } else if (u_isdigit(c)) {
      keep = !config.strip_numbers;
    }
    if (!keep) {
      pending_space = true;
      continue;
    }
    if (pending_space && !mapped.isEmpty()) mapped.append(static_cast<UChar>(u' '));
    pending_space = false;
    mapped.append(c);
  }

  // Case mapping can leave a sequence that composes further.
  status = U_ZERO_ERROR;
  icu::UnicodeString result = nfc().normalize(mapped, status);
  if (U_FAILURE(status)) result = mapped;
  std::string out;
  result.toUTF8String(out);
  return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const auto next = normalized.find(' ', pos);
    const auto end = next == std::string_view::npos ? normalized.size() : next;
    if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
    pos = end + 1;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// LemmaDictionary

std::vector<SuffixRule> LemmaDictionary::default_suffix_rules() {
  return {
      {"sses", "ss", 1, {}},
      {"ies", "y", 2, {}},
      {"ches", "ch", 2, {}},
      {"shes", "sh", 2, {}},
      {"xes", "x", 2, {}},
      {"s", "", 3, {"s", "u", "i"}},
      {"ied", "y", 2, {}},
      {"ing", "", 4, {}},
      {"ed", "", 4, {"e"}},
  };
}

LemmaDictionary::LemmaDictionary() : rules_(default_suffix_rules()) {}

LemmaDictionary::LemmaDictionary(std::unordered_map<std::string, std::string> entries,
                                 std::vector<SuffixRule> suffix_rules)
    : rules_(std::move(suffix_rules)) {
  // Collapse chains so every entry points at a terminal base form. A cycle
  // resolves to the lexicographically smallest member.
  for (const auto& [inflected, base] : entries) {
    std::string current = base;
    std::set<std::string> seen{inflected};
    while (true) {
      auto it = entries.find(current);
      if (it == entries.end() || it->second == current) break;
      if (!seen.insert(current).second) {
        current = *seen.begin();
        break;
      }
      current = it->second;
    }
    entries_[inflected] = current;
  }
  std::vector<std::string> bases;
  bases.reserve(entries_.size());
  for (const auto& [inflected, base] : entries_) bases.push_back(base);
  for (auto& base : bases) entries_[base] = base;
}

std::string LemmaDictionary::apply_rules(std::string_view token) const {
  for (const auto& rule : rules_) {
    if (!ends_with(token, rule.suffix)) continue;
    const std::string_view stem = token.substr(0, token.size() - rule.suffix.size());
    if (stem.size() < rule.min_stem) continue;
    const bool blocked =
        std::any_of(rule.blocked_stem_endings.begin(), rule.blocked_stem_endings.end(),
                    [&](const std::string& e) { return ends_with(stem, e); });
    if (blocked) continue;
    return std::string(stem) + rule.replacement;
  }
  return std::string(token);
}

std::string LemmaDictionary::lemmatize(std::string_view token) const {
  if (auto it = entries_.find(std::string(token)); it != entries_.end()) return it->second;
  std::string rewritten = apply_rules(token);
  if (rewritten == token) return rewritten;
  if (auto it = entries_.find(rewritten); it != entries_.end()) return it->second;
  if (rewritten.empty() || apply_rules(rewritten) != rewritten) return std::string(token);
  return rewritten;
}

// ---------------------------------------------------------------------------
// PosLexicon

unsigned PosLexicon::tags(std::string_view token) const {
  auto it = tags_.find(std::string(token));
  return it == tags_.end() ? 0u : it->second;
}

bool PosLexicon::contains(std::string_view token) const {
  return tags_.find(std::string(token)) != tags_.end();
}

// ---------------------------------------------------------------------------
// Stages

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const PipelineConfig& config) {
  std::erase_if(tokens, [&](const std::string& t) { return config.stopword_list.count(t) > 0; });
  return tokens;
}

std::vector<std::string> extract_keywords(std::vector<std::string> tokens,
                                          const PipelineConfig& config,
                                          const PosLexicon& lexicon) {
  if (config.keyword_mode == KeywordMode::AllContentWords) return tokens;
  std::erase_if(tokens, [&](const std::string& t) {
    if (!lexicon.contains(t)) return false;
    return (lexicon.tags(t) & (kNoun | kVerb)) == 0;
  });
  return tokens;
}

std::vector<std::string> build_ngrams(const std::vector<std::string>& keywords, int ngram_max) {
  if (ngram_max < 1) throw Error(ErrorCode::InvalidConfig, "ngram_max must be >= 1");
  std::vector<std::string> out;
  const std::size_t count = keywords.size();
  for (std::size_t n = 1; n <= static_cast<std::size_t>(ngram_max) && n <= count; ++n) {
    for (std::size_t start = 0; start + n <= count; ++start) {
      std::string gram = keywords[start];
      for (std::size_t k = 1; k < n; ++k) {
        gram += ' ';
        gram += keywords[start + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

TokenizedDocument preprocess(std::string_view raw, std::string source_id,
                             const TextResources& resources, const PipelineConfig& config) {
  TokenizedDocument doc;
  doc.source_id = std::move(source_id);
  std::vector<std::string> tokens = tokenize(normalize(raw, config));
  for (auto& t : tokens) t = resources.lemmas.lemmatize(t);
  doc.lemmas = remove_stopwords(std::move(tokens), config);
  doc.keywords = extract_keywords(doc.lemmas, config, resources.pos);
  doc.ngrams = build_ngrams(doc.keywords, config.ngram_max);
  return doc;
}

// ---------------------------------------------------------------------------
// Data files

LemmaDictionary read_lemma_dictionary(std::istream& in) {
  std::unordered_map<std::string, std::string> entries;
  for_each_data_line(in, [&](const std::string& line, std::size_t line_no) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::MalformedRecord,
                  "lemma dictionary line " + std::to_string(line_no) + ": expected inflected<TAB>base",
                  line_no);
    }
    const std::string inflected = trim(line.substr(0, tab));
    const std::string base = trim(line.substr(tab + 1));
    if (inflected.empty() || base.empty()) {
      throw Error(ErrorCode::MalformedRecord,
                  "lemma dictionary line " + std::to_string(line_no) + ": empty field", line_no);
    }
    entries[inflected] = base;
  });
  return LemmaDictionary(std::move(entries), LemmaDictionary::default_suffix_rules());
}

LemmaDictionary load_lemma_dictionary(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_lemma_dictionary(in);
}

PosLexicon read_pos_lexicon(std::istream& in) {
  std::unordered_map<std::string, unsigned> tags;
  for_each_data_line(in, [&](const std::string& line, std::size_t line_no) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::MalformedRecord,
                  "POS lexicon line " + std::to_string(line_no) + ": expected token<TAB>tags", line_no);
    }
    const std::string token = trim(line.substr(0, tab));
    unsigned mask = 0;
    std::stringstream fields(line.substr(tab + 1));
    std::string field;
    while (std::getline(fields, field, ',')) {
      field = trim(field);
      if (field == "N") mask |= kNoun;
      else if (field == "V") mask |= kVerb;
      else if (field == "ADJ") mask |= kAdjective;
      else if (field == "ADV") mask |= kAdverb;
      else if (field == "OTHER") mask |= kOther;
      else
        throw Error(ErrorCode::MalformedRecord,
                    "POS lexicon line " + std::to_string(line_no) + ": unknown tag '" + field + "'",
                    line_no);
    }
    if (token.empty() || mask == 0) {
      throw Error(ErrorCode::MalformedRecord,
                  "POS lexicon line " + std::to_string(line_no) + ": empty field", line_no);
    }
    tags[token] |= mask;
  });
  return PosLexicon(std::move(tags));
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_pos_lexicon(in);
}

std::set<std::string> read_stopwords(std::istream& in) {
  std::set<std::string> words;
  for_each_data_line(in, [&](const std::string& line, std::size_t) { words.insert(trim(line)); });
  return words;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_stopwords(in);
}

std::filesystem::path bundled_data_dir() {
  if (const char* env = std::getenv("SLRPLAN_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return SLRPLAN_DATA_DIR;
}

PipelineConfig default_pipeline_config() {
  PipelineConfig config;
  config.stopword_list = load_stopwords(bundled_data_dir() / "stopwords.txt");
  return config;
}

TextResources load_bundled_resources() {
  const auto dir = bundled_data_dir();
  return {load_lemma_dictionary(dir / "lemmas.tsv"), load_pos_lexicon(dir / "pos_lexicon.tsv")};
}

}  // namespace slrplan
