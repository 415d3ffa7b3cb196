#include <doctest.h>

#include <string>
#include <vector>

#include "cashtag/heuristics.hpp"
#include "cashtag/textprep.hpp"

using namespace cashtag;
using namespace cashtag::heuristics;
using corpus::ClassLabel;

namespace {

corpus::TweetRecord record(const std::string &body) {
  corpus::TweetRecord r;
  r.id = "t";
  r.body = body;
  r.cashtags = textprep::extract_cashtags(body);
  r.hashtags = textprep::extract_hashtags(body);
  return r;
}

}  // namespace

TEST_CASE("simple filter flags general crypto vocabulary") {
  const HeuristicConfig &cfg = default_config();
  CHECK(simple_filter(record("$NXT to the moon, bitcoin rally"), cfg) ==
        ClassLabel::Cryptocurrency);
  CHECK(simple_filter(record("$NXT earnings results today"), cfg) ==
        ClassLabel::Company);
  // Inflected forms reach the same stems.
  CHECK(simple_filter(record("$XLM lumens pumping"), cfg) ==
        ClassLabel::Cryptocurrency);
  CHECK(simple_filter(record("$XLM cryptocurrencies are wild"), cfg) ==
        ClassLabel::Cryptocurrency);
}

TEST_CASE("simple filter flags listed crypto tickers") {
  const HeuristicConfig &cfg = default_config();
  REQUIRE(cfg.crypto_ticker_list.count("ADA") == 1);
  CHECK(simple_filter(record("$NXT $ADA interesting pair"), cfg) ==
        ClassLabel::Cryptocurrency);
  // The homonym tickers themselves are deliberately not on that list.
  for (const char *t : {"AMS", "APH", "BRK", "CRW", "GBG", "NXT", "SKY", "XLM"})
    CHECK(cfg.crypto_ticker_list.count(t) == 0);
}

TEST_CASE("extended filter applies per-ticker overrides in both directions") {
  const HeuristicConfig &cfg = default_config();
  // Specific crypto vocabulary beats the quiet general verdict.
  CHECK(extended_filter(record("$NXT ignis airdrop live"), cfg).label ==
        ClassLabel::Cryptocurrency);
  CHECK(simple_filter(record("$NXT ignis airdrop live"), cfg) ==
        ClassLabel::Company);
  // Specific company vocabulary beats a general crypto hit.
  CHECK(extended_filter(record("$XLM xlmedia beats bitcoin estimates"), cfg).label ==
        ClassLabel::Company);
  CHECK(simple_filter(record("$XLM xlmedia beats bitcoin estimates"), cfg) ==
        ClassLabel::Cryptocurrency);
}

TEST_CASE("extended filter ticker entries vote through cashtags") {
  const HeuristicConfig &cfg = default_config();
  // "$STR" sits in the XLM crypto rule, so tagging both flips the verdict.
  CHECK(extended_filter(record("$XLM $STR nice chart"), cfg).label ==
        ClassLabel::Cryptocurrency);
  // "$ACB" sits in the APH company rule.
  CHECK(extended_filter(record("$APH $ACB what a day"), cfg).label ==
        ClassLabel::Company);
}

TEST_CASE("conflicting specific votes resolve to company and are reported") {
  const HeuristicConfig &cfg = default_config();
  FilterResult res = extended_filter(record("$XLM xlmedia moon"), cfg);
  CHECK(res.label == ClassLabel::Company);
  REQUIRE(res.conflicting_tickers.size() == 1);
  CHECK(res.conflicting_tickers[0] == "XLM");

  FilterResult clean = extended_filter(record("$XLM moon"), cfg);
  CHECK(clean.label == ClassLabel::Cryptocurrency);
  CHECK(clean.conflicting_tickers.empty());
}

TEST_CASE("tickers without rules fall back to the general verdict") {
  const HeuristicConfig &cfg = default_config();
  CHECK(extended_filter(record("$VOD blockchain pilot announced"), cfg).label ==
        ClassLabel::Cryptocurrency);
  CHECK(extended_filter(record("$VOD dividend announced"), cfg).label ==
        ClassLabel::Company);
}

TEST_CASE("word and ticker matching are keyed on different alphabets") {
  const HeuristicConfig &cfg = default_config();
  // The word "ada" in text is not the ticker $ADA.
  CHECK(simple_filter(record("$NXT ada lovelace biography"), cfg) ==
        ClassLabel::Company);
  // A listed ticker in lowercase cashtag form still matches (tags uppercase).
  CHECK(simple_filter(record("$NXT $ada pair"), cfg) ==
        ClassLabel::Cryptocurrency);
}

TEST_CASE("builtin rules match the shipped data file") {
  const HeuristicConfig &builtin = default_config();
  HeuristicConfig from_file = load_config(CASHTAG_SOURCE_DIR "/data/heuristics.json");
  CHECK(from_file.general_crypto_terms == builtin.general_crypto_terms);
  CHECK(from_file.crypto_ticker_list == builtin.crypto_ticker_list);
  REQUIRE(from_file.per_ticker.size() == builtin.per_ticker.size());
  for (const auto &[ticker, rule] : builtin.per_ticker) {
    REQUIRE(from_file.per_ticker.count(ticker) == 1);
    const TickerRule &other = from_file.per_ticker.at(ticker);
    CHECK(other.company_terms == rule.company_terms);
    CHECK(other.crypto_terms == rule.crypto_terms);
    CHECK(other.company_tickers == rule.company_tickers);
    CHECK(other.crypto_tickers == rule.crypto_tickers);
  }
}

TEST_CASE("config files carry surface forms, artifacts carry stems") {
  nlohmann::json user_file = {
      {"general_terms", {"agrees", "$BTC"}},
      {"crypto_tickers", {"$ADA"}},
      {"per_ticker",
       {{"XLM", {{"company", {"agencies"}}, {"crypto", {"rockets"}}}}}},
  };
  HeuristicConfig cfg = config_from_json(user_file);
  // Surface forms were stemmed once on load.
  CHECK(cfg.general_crypto_terms.count("agre") == 1);
  CHECK(cfg.per_ticker.at("XLM").company_terms.count("agenc") == 1);
  CHECK(cfg.per_ticker.at("XLM").crypto_terms.count("rocket") == 1);
  CHECK(cfg.crypto_ticker_list.count("ADA") == 1);
  CHECK(cfg.crypto_ticker_list.count("BTC") == 1);

  // The emitted form must reload to the same sets; "agre" would decay to
  // "agr" if the marker were ignored and stemming ran again.
  HeuristicConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.general_crypto_terms == cfg.general_crypto_terms);
  CHECK(back.crypto_ticker_list == cfg.crypto_ticker_list);
  CHECK(back.per_ticker.at("XLM").company_terms ==
        cfg.per_ticker.at("XLM").company_terms);
  CHECK(back.per_ticker.at("XLM").crypto_terms ==
        cfg.per_ticker.at("XLM").crypto_terms);
}
