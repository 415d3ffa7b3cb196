#include "cashtag/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "cashtag/error.hpp"
#include "cashtag/heuristics.hpp"
#include "cashtag/rng.hpp"
#include "cashtag/textprep.hpp"
#include "cashtag/timeutil.hpp"

namespace cashtag::synthgen {

using corpus::ClassLabel;
using corpus::TweetRecord;

namespace {

std::int64_t ts(const char *text) { return parse_timestamp(text); }

double unit(std::mt19937_64 &gen) { return uniform_unit(gen); }

bool bern(std::mt19937_64 &gen, double p) { return unit(gen) < p; }

std::size_t below(std::mt19937_64 &gen, std::size_t n) {
  return static_cast<std::size_t>(bounded_uint64(gen, n));
}

const std::string &pick(std::mt19937_64 &gen, const std::vector<std::string> &v) {
  return v[below(gen, v.size())];
}

// Inversion sampling keeps the draw deterministic across standard libraries.
std::uint64_t geometric(std::mt19937_64 &gen, double p) {
  const double u = unit(gen);
  const double g = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(g >= 0)) return 0;
  return g > 1000 ? 1000 : static_cast<std::uint64_t>(g);
}

double normal(std::mt19937_64 &gen) {
  const double u1 = 1.0 - unit(gen);  // keep log() away from zero
  const double u2 = unit(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::int64_t lognormal_count(std::mt19937_64 &gen, double mu, double sd) {
  const double v = std::exp(mu + sd * normal(gen));
  if (v >= 5e7) return 50000000;
  return v < 0.5 ? 0 : std::llround(v);
}

// Company tweets tag few symbols (heavy mass at exactly one); crypto tweets
// tag many (mass piled near the cap).  Both are geometric-family draws
// shaped to those summary statistics.
std::size_t company_ticker_count(std::mt19937_64 &gen) {
  if (bern(gen, 0.55)) return 1;
  const std::size_t c = 2 + static_cast<std::size_t>(geometric(gen, 0.225));
  return c > 25 ? 25 : c;
}

std::size_t crypto_ticker_count(std::mt19937_64 &gen) {
  const std::uint64_t g = geometric(gen, 0.125);
  return g >= 24 ? 1 : static_cast<std::size_t>(25 - g);
}

std::string made_up_ticker(std::mt19937_64 &gen,
                           const std::set<std::string> &taken) {
  // The ZX prefix stays clear of real symbol pools used elsewhere in a spec.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::string t = "ZX";
    const std::size_t extra = 1 + below(gen, 2);
    for (std::size_t i = 0; i < extra; ++i)
      t += static_cast<char>('A' + below(gen, 26));
    if (bern(gen, 0.3)) t += static_cast<char>('0' + below(gen, 10));
    if (!taken.count(t)) return t;
  }
  throw make_error("InvalidSpec", "could not draw a fresh synthetic ticker");
}

std::string random_url(std::mt19937_64 &gen) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::string url = "https://t.co/";
  for (int i = 0; i < 8; ++i) url += alphabet[below(gen, sizeof alphabet - 1)];
  return url;
}

std::int64_t uniform_seconds(std::mt19937_64 &gen, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::int64_t>(
                  bounded_uint64(gen, static_cast<std::uint64_t>(hi - lo + 1)));
}

void require(bool ok, const std::string &field, const std::string &what) {
  if (!ok) throw make_error("InvalidSpec", field + ": " + what);
}

void check_fraction(double v, const std::string &field) {
  require(v >= 0 && v <= 1, field, "must be in [0, 1]");
}

void check_profile(const ClassProfile &p, const std::string &name) {
  require(p.follower_log_sd > 0 && p.friends_log_sd > 0 && p.favorites_log_sd > 0,
          name, "log-normal spreads must be positive");
  check_fraction(p.default_profile_rate, name + ".default_profile_rate");
  check_fraction(p.verified_rate, name + ".verified_rate");
  require(p.account_window_begin <= p.account_window_end, name,
          "account window must have begin <= end");
}

}  // namespace

GeneratorSpec default_spec() {
  GeneratorSpec s;
  s.tweet_window_begin = ts("2018-01-08T00:00:00Z");
  s.tweet_window_end = ts("2018-06-24T23:59:59Z");

  s.company.follower_log_mean = 5.414;
  s.company.follower_log_sd = 1.2;
  s.company.friends_log_mean = 5.0;
  s.company.friends_log_sd = 1.0;
  s.company.favorites_log_mean = 4.0;
  s.company.favorites_log_sd = 1.5;
  s.company.default_profile_rate = 0.58;
  s.company.verified_rate = 0.01;
  s.company.account_window_begin = ts("2009-01-01T00:00:00Z");
  s.company.account_window_end = ts("2017-12-31T23:59:59Z");

  s.crypto.follower_log_mean = 1.5;
  s.crypto.follower_log_sd = 2.8;
  s.crypto.friends_log_mean = 3.5;
  s.crypto.friends_log_sd = 2.0;
  s.crypto.favorites_log_mean = 1.0;
  s.crypto.favorites_log_sd = 1.8;
  s.crypto.default_profile_rate = 0.72;
  s.crypto.verified_rate = 0.001;
  s.crypto.account_window_begin = ts("2017-07-01T00:00:00Z");
  s.crypto.account_window_end = ts("2018-06-23T23:59:59Z");  // clamped per tweet

  s.hard_crypto = s.company;  // imitates a company account
  s.hard_crypto.default_profile_rate = 0.58;
  s.hard_crypto.account_window_begin = ts("2017-07-01T00:00:00Z");
  s.hard_crypto.account_window_end = ts("2017-12-31T23:59:59Z");

  s.homonym_tickers = {"AMS", "APH", "BRK", "CRW", "GBG", "NXT", "SKY", "XLM"};
  s.homonym_crypto_weights = {0.04, 0.06, 0.06, 0.04, 0.04, 0.35, 0.06, 0.35};

  s.company_extra_tickers = {
      "VOD", "HSBA", "BARC", "LLOY", "TSCO", "BT.A", "GSK",  "AZN",  "RIO",
      "BATS", "ULVR", "SHEL", "REL",  "NG",   "PRU",  "STAN", "AAL",  "CRH",
      "DGE",  "EXPN", "GLEN", "IMB",  "KGF",  "LGEN", "MKS",  "MRO",  "PSON",
      "RR",   "SGE",  "SSE",  "SVT",  "TW",   "WPP",
  };
  for (const auto &t : heuristics::default_config().crypto_ticker_list)
    s.listed_crypto_tickers.push_back(t);

  s.general_crypto_words = {"coin",    "crypto",   "cryptocurrency", "btc",
                            "bitcoin", "ethereum", "lumens",         "stellar",
                            "binance", "blockchain", "whale"};
  s.company_words_by_ticker = {
      {"AMS", {"hospital", "medical"}},
      {"APH", {"weed", "cannabis", "medical", "amphenol", "aphria"}},
      {"BRK", {"berkshire", "buffet", "warren", "brooks", "oil"}},
      {"CRW", {"craneware"}},
      {"GBG", {"plc", "group"}},
      {"NXT", {"plc"}},
      {"SKY", {"skyline", "fox"}},
      {"XLM", {"xlmedia"}},
  };
  s.crypto_slang_by_ticker = {
      {"NXT", {"ignis", "ardor", "jelurida"}},
      {"XLM", {"rocket", "moon", "worth", "trx"}},
  };
  s.company_filler_words = {"earnings", "results", "share",    "dividend",
                            "annual",   "report",  "revenue",  "outlook",
                            "interim",  "investor", "chairman", "inc",
                            "company",  "finance"};
  s.crypto_filler_words = {"pump",    "telegram", "airdrop", "hodl",
                           "gem",     "profit",   "signals", "join",
                           "daily",   "free",     "gains",   "exchange"};
  s.neutral_words = {"buy",  "sell",   "hold",    "price", "market", "chart",
                     "today", "news",  "update",  "trading", "watch", "looking"};
  s.company_hashtags = {"stocks", "investing", "ftse", "markets", "earnings"};
  s.crypto_hashtags = {"crypto", "altcoin", "btc", "hodl", "airdrop"};
  s.company_descriptions = {"investor updates and market commentary",
                            "equity research desk", "private investor", ""};
  s.crypto_descriptions = {"daily signals and altcoin picks", "to the moon",
                           "trader", ""};
  return s;
}

void validate(const GeneratorSpec &s) {
  check_fraction(s.crypto_fraction, "crypto_fraction");
  require(s.tweet_window_begin <= s.tweet_window_end, "tweet_window",
          "must have begin <= end");
  check_profile(s.company, "company");
  check_profile(s.crypto, "crypto");
  check_profile(s.hard_crypto, "hard_crypto");
  check_fraction(s.company_hour_core_mass, "company_hour_core_mass");
  check_fraction(s.company_weekend_redraw, "company_weekend_redraw");
  const std::pair<double, const char *> rates[] = {
      {s.crypto_stealth_slang, "crypto_stealth_slang"},
      {s.crypto_stealth_plain, "crypto_stealth_plain"},
      {s.crypto_hard_profile, "crypto_hard_profile"},
      {s.crypto_general_term_rate, "crypto_general_term_rate"},
      {s.crypto_slang_rate, "crypto_slang_rate"},
      {s.crypto_listed_extra_rate, "crypto_listed_extra_rate"},
      {s.company_specific_term_rate, "company_specific_term_rate"},
      {s.company_crypto_term_rate, "company_crypto_term_rate"},
      {s.company_url_rate, "company_url_rate"},
      {s.crypto_url_rate, "crypto_url_rate"},
      {s.company_hashtag_rate, "company_hashtag_rate"},
      {s.crypto_hashtag_rate, "crypto_hashtag_rate"},
      {s.company_emoticon_rate, "company_emoticon_rate"},
      {s.crypto_emoticon_rate, "crypto_emoticon_rate"}};
  for (const auto &[v, name] : rates) check_fraction(v, name);
  require(s.crypto_stealth_slang + s.crypto_stealth_plain + s.crypto_hard_profile <=
              1.0,
          "crypto slices", "slice fractions must not exceed 1 combined");

  require(!s.homonym_tickers.empty(), "homonym_tickers", "must not be empty");
  require(s.homonym_crypto_weights.size() == s.homonym_tickers.size(),
          "homonym_crypto_weights", "must align with homonym_tickers");
  double wsum = 0;
  for (double w : s.homonym_crypto_weights) {
    require(w >= 0, "homonym_crypto_weights", "weights must be non-negative");
    wsum += w;
  }
  require(wsum > 0, "homonym_crypto_weights", "weights must not all be zero");
  const std::pair<const std::vector<std::string> *, const char *> ticker_lists[] = {
      {&s.homonym_tickers, "homonym_tickers"},
      {&s.company_extra_tickers, "company_extra_tickers"},
      {&s.listed_crypto_tickers, "listed_crypto_tickers"}};
  for (const auto &[listp, name] : ticker_lists)
    for (const auto &t : *listp)
      require(textprep::is_valid_ticker(t), std::string(name),
              "\"" + t + "\" is not a valid ticker symbol");
  require(!s.company_extra_tickers.empty(), "company_extra_tickers",
          "must not be empty");
  require(!s.listed_crypto_tickers.empty(), "listed_crypto_tickers",
          "must not be empty");
  require(!s.general_crypto_words.empty(), "general_crypto_words",
          "must not be empty");
  require(!s.neutral_words.empty(), "neutral_words", "must not be empty");
  require(!s.company_filler_words.empty(), "company_filler_words",
          "must not be empty");
  require(!s.crypto_filler_words.empty(), "crypto_filler_words",
          "must not be empty");
  for (const auto &t : s.homonym_tickers)
    require(s.company_words_by_ticker.count(t), "company_words_by_ticker",
            "missing company vocabulary for " + t);
}

namespace {

struct Pools {
  std::vector<std::string> slang_tickers;  // homonyms that have slang entries
  std::vector<double> cumulative_weights;
  std::set<std::string> reserved;  // symbols a made-up ticker must avoid
};

Pools build_pools(const GeneratorSpec &s) {
  Pools p;
  for (const auto &t : s.homonym_tickers)
    if (s.crypto_slang_by_ticker.count(t) && !s.crypto_slang_by_ticker.at(t).empty())
      p.slang_tickers.push_back(t);
  double acc = 0;
  for (double w : s.homonym_crypto_weights) {
    acc += w;
    p.cumulative_weights.push_back(acc);
  }
  p.reserved.insert(s.homonym_tickers.begin(), s.homonym_tickers.end());
  p.reserved.insert(s.company_extra_tickers.begin(), s.company_extra_tickers.end());
  p.reserved.insert(s.listed_crypto_tickers.begin(), s.listed_crypto_tickers.end());
  return p;
}

std::string weighted_homonym(std::mt19937_64 &gen, const GeneratorSpec &s,
                             const Pools &pools) {
  const double total = pools.cumulative_weights.back();
  const double u = unit(gen) * total;
  for (std::size_t i = 0; i < pools.cumulative_weights.size(); ++i)
    if (u < pools.cumulative_weights[i]) return s.homonym_tickers[i];
  return s.homonym_tickers.back();
}

enum class Slice { CompanyPlain, CryptoBulk, CryptoSlang, CryptoPlain, CryptoHard };

void append_words(std::vector<std::string> &parts, std::mt19937_64 &gen,
                  const std::vector<std::string> &pool, std::size_t lo,
                  std::size_t hi) {
  const std::size_t n = lo + below(gen, hi - lo + 1);
  for (std::size_t i = 0; i < n; ++i) parts.push_back(pick(gen, pool));
}

TweetRecord make_record(const GeneratorSpec &s, const Pools &pools,
                        std::size_t index) {
  std::mt19937_64 gen(mix_seed(s.seed ^ mix_seed(index + 1)));
  TweetRecord rec;
  char idbuf[32];
  std::snprintf(idbuf, sizeof idbuf, "synth-%07zu", index + 1);
  rec.id = idbuf;

  const bool crypto = bern(gen, s.crypto_fraction);
  rec.label = crypto ? ClassLabel::Cryptocurrency : ClassLabel::Company;

  Slice slice = Slice::CompanyPlain;
  if (crypto) {
    const double u = unit(gen);
    if (u < s.crypto_stealth_slang && !pools.slang_tickers.empty())
      slice = Slice::CryptoSlang;
    else if (u < s.crypto_stealth_slang + s.crypto_stealth_plain)
      slice = Slice::CryptoPlain;
    else if (u < s.crypto_stealth_slang + s.crypto_stealth_plain + s.crypto_hard_profile)
      slice = Slice::CryptoHard;
    else
      slice = Slice::CryptoBulk;
  }

  std::string primary;
  switch (slice) {
    case Slice::CryptoSlang:
      primary = pools.slang_tickers[below(gen, pools.slang_tickers.size())];
      break;
    case Slice::CompanyPlain:
      primary = s.homonym_tickers[below(gen, s.homonym_tickers.size())];
      break;
    default:
      primary = weighted_homonym(gen, s, pools);
      break;
  }

  // Cashtag set: the homonym plus class-dependent extras.
  std::size_t count;
  if (slice == Slice::CryptoHard)
    count = 2 + below(gen, 3);
  else if (crypto)
    count = crypto_ticker_count(gen);
  else
    count = company_ticker_count(gen);

  std::set<std::string> used{primary};
  std::vector<std::string> tags{primary};
  auto listed_order = shuffled_indices(s.listed_crypto_tickers.size(), gen);
  auto company_order = shuffled_indices(s.company_extra_tickers.size(), gen);
  std::size_t listed_at = 0, company_at = 0;
  auto next_listed = [&]() -> const std::string * {
    while (listed_at < listed_order.size()) {
      const auto &t = s.listed_crypto_tickers[listed_order[listed_at++]];
      if (used.insert(t).second) return &t;
    }
    return nullptr;
  };
  auto next_company = [&]() -> const std::string * {
    while (company_at < company_order.size()) {
      const auto &t = s.company_extra_tickers[company_order[company_at++]];
      if (used.insert(t).second) return &t;
    }
    return nullptr;
  };
  for (std::size_t k = 1; k < count; ++k) {
    const std::string *tag = nullptr;
    switch (slice) {
      case Slice::CompanyPlain:
        tag = next_company();
        break;
      case Slice::CryptoHard:
        tag = next_listed();
        break;
      case Slice::CryptoBulk:
        if (bern(gen, s.crypto_listed_extra_rate)) tag = next_listed();
        break;
      default:
        break;  // stealth slices tag only unremarkable symbols
    }
    if (tag) {
      tags.push_back(*tag);
    } else {
      std::set<std::string> avoid = pools.reserved;
      avoid.insert(used.begin(), used.end());
      std::string fresh = made_up_ticker(gen, avoid);
      used.insert(fresh);
      tags.push_back(fresh);
    }
  }

  // Body parts, shuffled at the end so nothing depends on emission order.
  std::vector<std::string> parts;
  static const std::vector<std::string> no_slang;
  const auto slang_it = s.crypto_slang_by_ticker.find(primary);
  const std::vector<std::string> &slang =
      slang_it == s.crypto_slang_by_ticker.end() ? no_slang : slang_it->second;
  switch (slice) {
    case Slice::CompanyPlain: {
      if (bern(gen, s.company_specific_term_rate))
        append_words(parts, gen, s.company_words_by_ticker.at(primary), 1, 2);
      append_words(parts, gen, s.company_filler_words, 2, 4);
      append_words(parts, gen, s.neutral_words, 1, 3);
      if (bern(gen, s.company_crypto_term_rate))
        append_words(parts, gen, s.general_crypto_words, 1, 1);
      break;
    }
    case Slice::CryptoBulk: {
      if (bern(gen, s.crypto_general_term_rate))
        append_words(parts, gen, s.general_crypto_words, 1, 2);
      if (!slang.empty() && bern(gen, s.crypto_slang_rate))
        append_words(parts, gen, slang, 1, 1);
      append_words(parts, gen, s.crypto_filler_words, 2, 4);
      append_words(parts, gen, s.neutral_words, 1, 3);
      break;
    }
    case Slice::CryptoSlang: {
      append_words(parts, gen, slang, 1, 2);
      if (bern(gen, 0.5)) append_words(parts, gen, s.crypto_filler_words, 1, 2);
      append_words(parts, gen, s.neutral_words, 1, 3);
      break;
    }
    case Slice::CryptoPlain:
    case Slice::CryptoHard: {
      append_words(parts, gen, s.neutral_words, 2, 4);
      break;
    }
  }

  const bool company_style = slice == Slice::CompanyPlain;
  const double url_rate = company_style ? s.company_url_rate : s.crypto_url_rate;
  if (bern(gen, url_rate)) parts.push_back(random_url(gen));
  const double hashtag_rate =
      company_style ? s.company_hashtag_rate : s.crypto_hashtag_rate;
  if (bern(gen, hashtag_rate)) {
    const auto &pool = company_style ? s.company_hashtags : s.crypto_hashtags;
    std::set<std::string> chosen;
    const std::size_t n = 1 + below(gen, 2);
    for (std::size_t i = 0; i < n; ++i) chosen.insert(pick(gen, pool));
    for (const auto &h : chosen) parts.push_back("#" + h);
  }
  const double emo_rate =
      company_style ? s.company_emoticon_rate : s.crypto_emoticon_rate;
  if (bern(gen, emo_rate)) {
    static const std::vector<std::string> emoticons = {":)", ":-)", "xd", "<3"};
    parts.push_back(pick(gen, emoticons));
  }
  for (const auto &t : tags) parts.push_back("$" + t);
  shuffle_in_place(parts, gen);

  std::string body;
  for (const auto &p : parts) {
    if (!body.empty()) body += ' ';
    body += p;
  }
  rec.body = body;
  rec.cashtags = textprep::extract_cashtags(body);
  rec.hashtags = textprep::extract_hashtags(body);

  // Posting time: companies post in business hours on weekdays, the rest of
  // the population posts around the clock.  The company-imitating slice uses
  // the company clock.
  const bool business_hours = company_style || slice == Slice::CryptoHard;
  const std::int64_t day_lo = s.tweet_window_begin / 86400;
  const std::int64_t day_hi = s.tweet_window_end / 86400;
  std::int64_t day = day_lo;
  for (int attempt = 0; attempt < 32; ++attempt) {
    day = uniform_seconds(gen, day_lo, day_hi);
    const int wd = weekday_from_seconds(day * 86400);
    if (business_hours && wd >= 5 && bern(gen, s.company_weekend_redraw)) continue;
    break;
  }
  int hour;
  if (business_hours && bern(gen, s.company_hour_core_mass))
    hour = 10 + static_cast<int>(below(gen, 8));
  else
    hour = static_cast<int>(below(gen, 24));
  rec.created_at = day * 86400 + hour * 3600 +
                   static_cast<std::int64_t>(below(gen, 60)) * 60 +
                   static_cast<std::int64_t>(below(gen, 60));

  const ClassProfile &profile = company_style ? s.company
                                : slice == Slice::CryptoHard ? s.hard_crypto
                                                             : s.crypto;
  rec.user.followers =
      lognormal_count(gen, profile.follower_log_mean, profile.follower_log_sd);
  rec.user.friends =
      lognormal_count(gen, profile.friends_log_mean, profile.friends_log_sd);
  rec.user.favorites =
      lognormal_count(gen, profile.favorites_log_mean, profile.favorites_log_sd);
  rec.user.default_profile = bern(gen, profile.default_profile_rate);
  rec.user.verified = bern(gen, profile.verified_rate);
  const std::int64_t acc_hi =
      std::min(profile.account_window_end, rec.created_at - 86400);
  rec.user.account_created_at =
      uniform_seconds(gen, std::min(profile.account_window_begin, acc_hi), acc_hi);
  rec.user.description = company_style
                             ? s.company_descriptions[below(gen, s.company_descriptions.size())]
                             : s.crypto_descriptions[below(gen, s.crypto_descriptions.size())];
  return rec;
}

}  // namespace

corpus::Dataset generate(const GeneratorSpec &spec) {
  validate(spec);
  corpus::Dataset data;
  data.provenance = "synthgen:seed=" + std::to_string(spec.seed) +
                    ":n=" + std::to_string(spec.n_records);
  data.records.reserve(spec.n_records);
  Pools pools = build_pools(spec);
  for (std::size_t i = 0; i < spec.n_records; ++i)
    data.records.push_back(make_record(spec, pools, i));
  return data;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string &key) {
  throw make_error("InvalidSpec", "unknown generator spec key \"" + key + "\"");
}

void apply_profile(const json &j, ClassProfile &p, const std::string &name) {
  if (!j.is_object())
    throw make_error("InvalidSpec", name + ": must be an object");
  for (const auto &[key, value] : j.items()) {
    if (key == "follower_log_mean") p.follower_log_mean = value.get<double>();
    else if (key == "follower_log_sd") p.follower_log_sd = value.get<double>();
    else if (key == "friends_log_mean") p.friends_log_mean = value.get<double>();
    else if (key == "friends_log_sd") p.friends_log_sd = value.get<double>();
    else if (key == "favorites_log_mean") p.favorites_log_mean = value.get<double>();
    else if (key == "favorites_log_sd") p.favorites_log_sd = value.get<double>();
    else if (key == "default_profile_rate") p.default_profile_rate = value.get<double>();
    else if (key == "verified_rate") p.verified_rate = value.get<double>();
    else if (key == "account_window_begin")
      p.account_window_begin = parse_timestamp(value.get<std::string>());
    else if (key == "account_window_end")
      p.account_window_end = parse_timestamp(value.get<std::string>());
    else bad_key(name + "." + key);
  }
}

std::map<std::string, std::vector<std::string>> word_map(const json &j,
                                                         const std::string &name) {
  if (!j.is_object())
    throw make_error("InvalidSpec", name + ": must be an object of word lists");
  std::map<std::string, std::vector<std::string>> out;
  for (const auto &[key, value] : j.items())
    out[key] = value.get<std::vector<std::string>>();
  return out;
}

}  // namespace

GeneratorSpec load_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw make_error("IoError", "cannot open generator spec: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error &e) {
    throw make_error("InvalidSpec", std::string("generator spec: ") + e.what());
  }
  if (!root.is_object())
    throw make_error("InvalidSpec", "generator spec: top level must be an object");

  GeneratorSpec s = default_spec();
  try {
    for (const auto &[key, value] : root.items()) {
      if (key == "n_records") s.n_records = value.get<std::size_t>();
      else if (key == "crypto_fraction") s.crypto_fraction = value.get<double>();
      else if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "tweet_window_begin")
        s.tweet_window_begin = parse_timestamp(value.get<std::string>());
      else if (key == "tweet_window_end")
        s.tweet_window_end = parse_timestamp(value.get<std::string>());
      else if (key == "company") apply_profile(value, s.company, "company");
      else if (key == "crypto") apply_profile(value, s.crypto, "crypto");
      else if (key == "hard_crypto") apply_profile(value, s.hard_crypto, "hard_crypto");
      else if (key == "company_hour_core_mass") s.company_hour_core_mass = value.get<double>();
      else if (key == "company_weekend_redraw") s.company_weekend_redraw = value.get<double>();
      else if (key == "crypto_stealth_slang") s.crypto_stealth_slang = value.get<double>();
      else if (key == "crypto_stealth_plain") s.crypto_stealth_plain = value.get<double>();
      else if (key == "crypto_hard_profile") s.crypto_hard_profile = value.get<double>();
      else if (key == "crypto_general_term_rate") s.crypto_general_term_rate = value.get<double>();
      else if (key == "crypto_slang_rate") s.crypto_slang_rate = value.get<double>();
      else if (key == "crypto_listed_extra_rate") s.crypto_listed_extra_rate = value.get<double>();
      else if (key == "company_specific_term_rate") s.company_specific_term_rate = value.get<double>();
      else if (key == "company_crypto_term_rate") s.company_crypto_term_rate = value.get<double>();
      else if (key == "company_url_rate") s.company_url_rate = value.get<double>();
      else if (key == "crypto_url_rate") s.crypto_url_rate = value.get<double>();
      else if (key == "company_hashtag_rate") s.company_hashtag_rate = value.get<double>();
      else if (key == "crypto_hashtag_rate") s.crypto_hashtag_rate = value.get<double>();
      else if (key == "company_emoticon_rate") s.company_emoticon_rate = value.get<double>();
      else if (key == "crypto_emoticon_rate") s.crypto_emoticon_rate = value.get<double>();
      else if (key == "homonym_tickers") s.homonym_tickers = value.get<std::vector<std::string>>();
      else if (key == "homonym_crypto_weights") s.homonym_crypto_weights = value.get<std::vector<double>>();
      else if (key == "company_extra_tickers") s.company_extra_tickers = value.get<std::vector<std::string>>();
      else if (key == "listed_crypto_tickers") s.listed_crypto_tickers = value.get<std::vector<std::string>>();
      else if (key == "general_crypto_words") s.general_crypto_words = value.get<std::vector<std::string>>();
      else if (key == "company_words_by_ticker") s.company_words_by_ticker = word_map(value, key);
      else if (key == "crypto_slang_by_ticker") s.crypto_slang_by_ticker = word_map(value, key);
      else if (key == "company_filler_words") s.company_filler_words = value.get<std::vector<std::string>>();
      else if (key == "crypto_filler_words") s.crypto_filler_words = value.get<std::vector<std::string>>();
      else if (key == "neutral_words") s.neutral_words = value.get<std::vector<std::string>>();
      else if (key == "company_hashtags") s.company_hashtags = value.get<std::vector<std::string>>();
      else if (key == "crypto_hashtags") s.crypto_hashtags = value.get<std::vector<std::string>>();
      else if (key == "company_descriptions") s.company_descriptions = value.get<std::vector<std::string>>();
      else if (key == "crypto_descriptions") s.crypto_descriptions = value.get<std::vector<std::string>>();
      else bad_key(key);
    }
  } catch (const json::exception &e) {
    throw make_error("InvalidSpec", std::string("generator spec: ") + e.what());
  }
  validate(s);
  return s;
}

}  // namespace cashtag::synthgen
