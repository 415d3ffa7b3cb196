#include <doctest.h>

#include <string>
#include <vector>

#include "cashtag/textprep.hpp"

using namespace cashtag::textprep;

TEST_CASE("cashtag extraction follows the ticker grammar") {
  CHECK(extract_cashtags("$VOD up today") == std::vector<std::string>{"VOD"});
  CHECK(extract_cashtags("buy $bt.a and $Xlm") ==
        std::vector<std::string>{"BT.A", "XLM"});
  CHECK(extract_cashtags("$A $AB $ABCDEFGHIJ") ==
        std::vector<std::string>{"A", "AB", "ABCDEFGHIJ"});
  // First character must be a letter; length capped at 10.
  CHECK(extract_cashtags("$9X $ $.A $ABCDEFGHIJK").empty());
  // Duplicates and order are preserved.
  CHECK(extract_cashtags("$XLM $NXT $XLM") ==
        std::vector<std::string>{"XLM", "NXT", "XLM"});
  CHECK(extract_cashtags("price is $5 today").empty());
}

TEST_CASE("valid ticker predicate") {
  CHECK(is_valid_ticker("VOD"));
  CHECK(is_valid_ticker("BT.A"));
  CHECK(is_valid_ticker("QQNXT"));
  CHECK(is_valid_ticker("A1"));
  CHECK_FALSE(is_valid_ticker(""));
  CHECK_FALSE(is_valid_ticker("1A"));
  CHECK_FALSE(is_valid_ticker(".A"));
  CHECK_FALSE(is_valid_ticker("ABCDEFGHIJK"));
  CHECK_FALSE(is_valid_ticker("$VOD"));
  CHECK_FALSE(is_valid_ticker("A B"));
}

TEST_CASE("hashtag extraction") {
  CHECK(extract_hashtags("#Crypto rally #BTC_usd") ==
        std::vector<std::string>{"crypto", "btc_usd"});
  CHECK(extract_hashtags("#_x #9lives").empty());
  CHECK(extract_hashtags("nothing here").empty());
}

TEST_CASE("preprocess lowercases, strips urls and emoticons, stems") {
  TokenStream s = preprocess("Earnings UPDATE https://t.co/abc123 :) $VOD #Stocks");
  CHECK(s.tokens == std::vector<std::string>{"earn", "updat"});
  CHECK(s.cashtags == std::vector<std::string>{"VOD"});
  CHECK(s.hashtags == std::vector<std::string>{"stocks"});
}

TEST_CASE("stopwords are removed, content words stay") {
  TokenStream s = preprocess("the price of the coin is about to rise");
  for (const auto &t : s.tokens) {
    CHECK(t != "the");
    CHECK(t != "of");
    CHECK(t != "is");
    CHECK(t != "about");
    CHECK(t != "to");
  }
  CHECK(std::count(s.tokens.begin(), s.tokens.end(), "price") == 1);
  CHECK(std::count(s.tokens.begin(), s.tokens.end(), "coin") == 1);
}

TEST_CASE("cashtags do not leak into the token list") {
  TokenStream s = preprocess("$BTC $COIN moon");
  CHECK(s.tokens == std::vector<std::string>{"moon"});
  CHECK(s.cashtags == std::vector<std::string>{"BTC", "COIN"});
}

TEST_CASE("token alphabet is lowercase alphanumeric") {
  TokenStream s = preprocess("Don't worry; it's 100% fine!!! e=mc2");
  for (const auto &t : s.tokens) {
    CHECK_FALSE(t.empty());
    for (char c : t) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
      CHECK(ok);
    }
  }
}

TEST_CASE("preprocess is idempotent on its own output") {
  const char *bodies[] = {
      "Earnings agreed update https://x.co :) $VOD #stocks generalization",
      "cryptocurrencies are pumping!! buy $XLM $NXT now... to the moon",
      "Annual report: dividends & revenue looking GOOD (very good) 2018",
      "hopefulness feed rational a b c xyz singing",
  };
  for (const char *body : bodies) {
    TokenStream first = preprocess(body);
    std::string joined;
    for (const auto &t : first.tokens) {
      if (!joined.empty()) joined += ' ';
      joined += t;
    }
    TokenStream second = preprocess(joined);
    CHECK(second.tokens == first.tokens);
  }
}

TEST_CASE("builtin stopword list matches the shipped data file") {
  StopwordSet from_file =
      load_stopwords(CASHTAG_SOURCE_DIR "/data/stopwords_en.txt");
  const StopwordSet &builtin = default_stopwords();
  CHECK(from_file.size() == builtin.size());
  for (const auto &w : from_file) CHECK(builtin.count(w) == 1);
}
