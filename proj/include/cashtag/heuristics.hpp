#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/textprep.hpp"

namespace cashtag::heuristics {

// Per-ticker override lists.  A hit in company_terms (or company_tickers among
// the tweet's cashtags) votes Company; crypto_terms / crypto_tickers vote
// Cryptocurrency.  Specific votes take priority over the general verdict.
struct TickerRule {
  std::set<std::string> company_terms;   // stems
  std::set<std::string> crypto_terms;    // stems
  std::set<std::string> company_tickers;  // uppercase cashtags
  std::set<std::string> crypto_tickers;   // uppercase cashtags
};

struct HeuristicConfig {
  std::set<std::string> general_crypto_terms;  // stems
  std::set<std::string> crypto_ticker_list;    // uppercase cashtags
  std::map<std::string, TickerRule> per_ticker;
};

// Built-in rule set covering the homonym tickers.  Word entries are stored as
// stems; `$`-prefixed entries in the source lists are ticker matches and land
// in the ticker sets instead.
const HeuristicConfig &default_config();

// JSON file with sections general_terms, crypto_tickers, per_ticker.  Word
// entries are stemmed on load so config files can carry surface forms.
HeuristicConfig load_config(const std::string &path);

// Round trip used by model artifacts.  Emitted word entries are already
// stems and the output carries a "stemmed" marker; config_from_json skips
// the stemming pass when it sees that marker (stemming is not idempotent, so
// re-stemming stored stems would corrupt them).
nlohmann::json config_to_json(const HeuristicConfig &config);
HeuristicConfig config_from_json(const nlohmann::json &root);

struct FilterResult {
  corpus::ClassLabel label;
  // Tickers whose specific rules voted both ways; non-empty means the
  // Company-wins tie break was applied.
  std::vector<std::string> conflicting_tickers;
};

// Cryptocurrency iff a general crypto term occurs in the tokens or any
// cashtag is on the crypto ticker list.
corpus::ClassLabel simple_filter(const textprep::TokenStream &stream,
                                 const HeuristicConfig &config);

// Applies per-ticker rules for every cashtag that has one; their votes
// override the simple verdict.  Conflicting votes resolve to Company, since
// losing company tweets is the failure mode the filters exist to avoid.
FilterResult extended_filter(const textprep::TokenStream &stream,
                             const HeuristicConfig &config);

corpus::ClassLabel simple_filter(const corpus::TweetRecord &record,
                                 const HeuristicConfig &config);
FilterResult extended_filter(const corpus::TweetRecord &record,
                             const HeuristicConfig &config);

}  // namespace cashtag::heuristics
