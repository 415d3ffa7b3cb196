#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/textprep.hpp"

namespace cashtag::features {

enum class Variant {
  Basic,
  Extended,
  Combined,
  IndependentCombined,
  EmbeddingCombined,
  EmbeddingIndependent,
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string &text);

enum class VocabularyKind { ExtendedSVM, IndependentSVM, EmbeddingTopK };

struct Vocabulary {
  VocabularyKind kind = VocabularyKind::ExtendedSVM;
  std::vector<std::string> terms;  // unique stems, order fixed at construction
};

// Word lists for the supervised variants, stored stemmed.
const Vocabulary &extended_vocabulary();
const Vocabulary &independent_vocabulary();

// Per-record values before vectorization.
struct RawFeatures {
  std::string ticker;       // cashtag used for retrieval ("other" if none)
  int weekday = 0;          // 0 = Monday .. 6 = Sunday
  int hour = 0;             // 0..23
  double log_followers = 0;  // log10(followers + 1)
  double log_friends = 0;    // log10(friends + 1)
  double log_favorites = 0;  // log2(favorites + 1)
  double log_dollars = 0;    // log2(distinct cashtag count + 1)
  bool default_profile = false;
  int halfyear = 0;          // half-year index of account creation
};

// The homonym set picks the retrieval ticker: the first cashtag belonging to
// it, else the first cashtag of the record.
RawFeatures raw_features(const corpus::TweetRecord &record,
                         const std::vector<std::string> &homonym_tickers);

// Describes one feature layout.  Numeric fields come first, then the ticker
// one-hot (with trailing "other" slot), the account-age one-hot (leading
// "older" and trailing "newer" overflow slots), vocabulary presence bits, an
// embedding block, and finally the heuristic-verdict bit.
struct FeatureSchema {
  Variant variant = Variant::Basic;
  bool include_ticker = true;
  bool include_hour = true;
  std::vector<std::string> tickers;  // observed in training, sorted
  int halfyear_min = 0;
  int halfyear_max = -1;  // empty range until built
  Vocabulary vocab;       // empty terms for Basic
  std::size_t embedding_dim = 0;
  bool heuristic_bit = false;

  std::size_t length() const;
  std::size_t numeric_length() const;
  // Dataset-independent description of each position, for reports.
  std::vector<std::string> position_names() const;
};

// Collects observed tickers and the account-creation half-year range from the
// training set and fixes the layout for the given variant.
FeatureSchema build_schema(Variant variant, const corpus::Dataset &train,
                           const std::vector<std::string> &homonym_tickers);

// Numeric + categorical block shared by all variants.
std::vector<double> encode_base(const RawFeatures &raw, const FeatureSchema &schema);

// Presence bits over stemmed tokens, aligned to vocab.terms.
std::vector<double> encode_vocab(const textprep::TokenStream &stream,
                                 const Vocabulary &vocab);

// Full vector for schemas without embedding/heuristic blocks (those are
// appended by the model pipeline, which owns the artifacts involved).
std::vector<double> encode_basic(const corpus::TweetRecord &record,
                                 const FeatureSchema &schema,
                                 const std::vector<std::string> &homonym_tickers);

nlohmann::json schema_to_json(const FeatureSchema &schema);
FeatureSchema schema_from_json(const nlohmann::json &j);

// Per-class distribution summary; one CSV row per (class, statistic, bucket).
std::string explore_report_csv(const corpus::Dataset &dataset);

}  // namespace cashtag::features
