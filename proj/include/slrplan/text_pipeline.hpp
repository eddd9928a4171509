// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_TEXT_PIPELINE_HPP
#define SLRPLAN_TEXT_PIPELINE_HPP

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slrplan {

enum class KeywordMode { PosFiltered, AllContentWords };

std::string_view to_string(KeywordMode mode) noexcept;
KeywordMode keyword_mode_from_string(std::string_view text);

struct PipelineConfig {
  bool lowercase = true;
  bool strip_numbers = true;
  std::set<std::string> stopword_list;
  int ngram_max = 2;
  KeywordMode keyword_mode = KeywordMode::PosFiltered;

  // Throws Error(InvalidConfig) when ngram_max < 1 or a stop word is not in
  // normalized form.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

struct TokenizedDocument {
  std::string source_id;
  std::vector<std::string> lemmas;    // after lemmatization and stop-word removal
  std::vector<std::string> keywords;  // subset of lemmas
  std::vector<std::string> ngrams;    // tokens joined by a single space

  friend bool operator==(const TokenizedDocument&, const TokenizedDocument&) = default;
};

struct SuffixRule {
  std::string suffix;
  std::string replacement;
  // Minimum number of characters that must remain before the suffix.
  std::size_t min_stem = 1;
  // The rule does not fire if the stem ends with one of these.
  std::vector<std::string> blocked_stem_endings;
};

/// Inflected form -> base form lookup with an ordered suffix-rule fallback.
///
/// Lookup is total and idempotent. Base forms are registered as identity
/// entries so they are never rewritten by a suffix rule, and chained entries
/// (a -> b, b -> c) are collapsed at construction. A suffix rewrite whose
/// result would itself be rewritten again is rejected and the token is
/// returned unchanged.
class LemmaDictionary {
 public:
  LemmaDictionary();  // no entries, default English suffix rules
  LemmaDictionary(std::unordered_map<std::string, std::string> entries,
                  std::vector<SuffixRule> suffix_rules);

  static std::vector<SuffixRule> default_suffix_rules();

  std::string lemmatize(std::string_view token) const;

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<SuffixRule>& suffix_rules() const noexcept { return rules_; }

 private:
  std::string apply_rules(std::string_view token) const;

  std::unordered_map<std::string, std::string> entries_;
  std::vector<SuffixRule> rules_;
};

enum PosTag : unsigned {
  kNoun = 1u << 0,
  kVerb = 1u << 1,
  kAdjective = 1u << 2,
  kAdverb = 1u << 3,
  kOther = 1u << 4,
};

class PosLexicon {
 public:
  PosLexicon() = default;
  explicit PosLexicon(std::unordered_map<std::string, unsigned> tags)
      : tags_(std::move(tags)) {}

  // Bit set of PosTag values; 0 when the token is unknown.
  unsigned tags(std::string_view token) const;
  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return tags_.size(); }

 private:
  std::unordered_map<std::string, unsigned> tags_;
};

/// Read-only language data shared by every pipeline invocation.
struct TextResources {
  LemmaDictionary lemmas;
  PosLexicon pos;
};

// Normalizes text: NFC composition, punctuation/special characters (and digits
// when strip_numbers) replaced by spaces, lowercased when configured, runs of
// whitespace collapsed, trimmed. Invalid UTF-8 sequences are treated as
// special characters.
std::string normalize(std::string_view text, const PipelineConfig& config);

std::vector<std::string> tokenize(std::string_view normalized);

inline std::string lemmatize(std::string_view token, const LemmaDictionary& dict) {
  return dict.lemmatize(token);
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const PipelineConfig& config);

// In PosFiltered mode keeps tokens tagged noun or verb, plus tokens the
// lexicon does not know.
std::vector<std::string> extract_keywords(std::vector<std::string> tokens,
                                          const PipelineConfig& config,
                                          const PosLexicon& lexicon);

// Unigrams first, then bigrams, ... up to ngram_max, each in order of
// appearance.
std::vector<std::string> build_ngrams(const std::vector<std::string>& keywords, int ngram_max);

TokenizedDocument preprocess(std::string_view raw, std::string source_id,
                             const TextResources& resources, const PipelineConfig& config);

// File formats. '#' starts a comment line in every format; blank lines are
// ignored.
//   lemma dictionary:  inflected<TAB>base
//   POS lexicon:       token<TAB>N,V,ADJ,ADV,OTHER
//   stop words:        one token per line
LemmaDictionary read_lemma_dictionary(std::istream& in);
LemmaDictionary load_lemma_dictionary(const std::filesystem::path& path);
PosLexicon read_pos_lexicon(std::istream& in);
PosLexicon load_pos_lexicon(const std::filesystem::path& path);
std::set<std::string> read_stopwords(std::istream& in);
std::set<std::string> load_stopwords(const std::filesystem::path& path);

// Directory with the bundled stopwords.txt, lemmas.tsv and pos_lexicon.tsv.
// SLRPLAN_DATA_DIR in the environment overrides the build-time location.
std::filesystem::path bundled_data_dir();

// Default configuration using the bundled stop-word list.
PipelineConfig default_pipeline_config();
TextResources load_bundled_resources();

}  // namespace slrplan

#endif  // SLRPLAN_TEXT_PIPELINE_HPP
