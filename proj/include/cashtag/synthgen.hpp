#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cashtag/corpus.hpp"

namespace cashtag::synthgen {

// Log-normal parameters are on the natural-log scale.
struct ClassProfile {
  double follower_log_mean = 0;
  double follower_log_sd = 1;
  double friends_log_mean = 0;
  double friends_log_sd = 1;
  double favorites_log_mean = 0;
  double favorites_log_sd = 1;
  double default_profile_rate = 0.5;
  double verified_rate = 0;
  std::int64_t account_window_begin = 0;  // epoch seconds
  std::int64_t account_window_end = 0;
};

// The crypto population is a mixture: the bulk advertises itself with general
// crypto vocabulary and listed coin tickers, a slang slice signals only
// through per-ticker jargon, a plain slice has no textual signal at all (its
// account profile gives it away), and a hard slice imitates a company account
// while still tagging listed coins.  Company tweets carry their company's
// own vocabulary almost always, plus an occasional stray crypto word.  These
// slices are what give rule filters and learned models different reach.
struct GeneratorSpec {
  std::size_t n_records = 20000;
  double crypto_fraction = 0.97;
  std::uint64_t seed = 1;

  std::int64_t tweet_window_begin = 0;  // filled by default_spec()
  std::int64_t tweet_window_end = 0;

  ClassProfile company;
  ClassProfile crypto;
  ClassProfile hard_crypto;  // profile used by the company-imitating slice

  double company_hour_core_mass = 0.80;  // share drawn inside 10:00-17:59
  double company_weekend_redraw = 0.92;

  double crypto_stealth_slang = 0.018;
  double crypto_stealth_plain = 0.012;
  double crypto_hard_profile = 0.012;

  double crypto_general_term_rate = 0.92;
  double crypto_slang_rate = 0.50;
  double crypto_listed_extra_rate = 0.70;
  double company_specific_term_rate = 0.995;
  double company_crypto_term_rate = 0.06;
  double company_url_rate = 0.40;
  double crypto_url_rate = 0.50;
  double company_hashtag_rate = 0.25;
  double crypto_hashtag_rate = 0.35;
  double company_emoticon_rate = 0.05;
  double crypto_emoticon_rate = 0.15;

  std::vector<std::string> homonym_tickers;
  std::vector<double> homonym_crypto_weights;  // aligned to homonym_tickers

  std::vector<std::string> company_extra_tickers;
  std::vector<std::string> listed_crypto_tickers;

  std::vector<std::string> general_crypto_words;
  std::map<std::string, std::vector<std::string>> company_words_by_ticker;
  std::map<std::string, std::vector<std::string>> crypto_slang_by_ticker;
  std::vector<std::string> company_filler_words;
  std::vector<std::string> crypto_filler_words;
  std::vector<std::string> neutral_words;
  std::vector<std::string> company_hashtags;
  std::vector<std::string> crypto_hashtags;
  std::vector<std::string> company_descriptions;
  std::vector<std::string> crypto_descriptions;
};

// Calibrated so rule filters and supervised models land in distinct quality
// bands on the generated data.
GeneratorSpec default_spec();

// JSON overrides applied on top of default_spec(); unknown keys rejected.
GeneratorSpec load_spec(const std::string &path);

// Throws InvalidSpec naming the offending field.
void validate(const GeneratorSpec &spec);

// Deterministic in spec.seed; record i is derived from an engine seeded by
// (seed, i), so any prefix of the corpus is stable under n_records changes.
corpus::Dataset generate(const GeneratorSpec &spec);

}  // namespace cashtag::synthgen
