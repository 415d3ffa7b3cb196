#include "cashtag/heuristics.hpp"

#include <fstream>

#include <json.hpp>

#include "cashtag/error.hpp"
#include "cashtag/porter.hpp"

namespace cashtag::heuristics {

using corpus::ClassLabel;
using nlohmann::json;

namespace {

std::string upcase(std::string s) {
  for (char &c : s)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return s;
}

std::string downcase(std::string s) {
  for (char &c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

// Source lists mix words with `$`-prefixed tickers; words are stemmed unless
// the source already carries stems, ticker entries are routed to the caller's
// ticker set.
void add_entry(const std::string &raw, std::set<std::string> &terms,
               std::set<std::string> &tickers, bool stem_words = true) {
  if (raw.empty()) return;
  if (raw[0] == '$')
    tickers.insert(upcase(raw.substr(1)));
  else
    terms.insert(stem_words ? porter_stem(downcase(raw)) : downcase(raw));
}

TickerRule make_rule(std::initializer_list<const char *> company,
                     std::initializer_list<const char *> crypto) {
  TickerRule rule;
  for (const char *w : company) add_entry(w, rule.company_terms, rule.company_tickers);
  for (const char *w : crypto) add_entry(w, rule.crypto_terms, rule.crypto_tickers);
  return rule;
}

HeuristicConfig build_default() {
  HeuristicConfig cfg;
  // The general list covers the crypto word family explicitly: matching works
  // by stem equality, so "crypt", "crypto" and "cryptocurr" are all needed to
  // catch crypt/crypto/cryptocurrency surface forms.
  for (const char *w :
       {"coin", "crypt", "crypto", "cryptocurrency", "btc", "lumen", "ethereum",
        "bitcoin", "whale", "stellar", "binance", "blockchain"})
    cfg.general_crypto_terms.insert(porter_stem(w));

  cfg.crypto_ticker_list = {
      "SNT", "ADA", "MTH", "ADX", "LSK", "DSR", "ARK", "CLOAK", "TKN",
      "DLC", "DCR", "KMD", "IQT", "ZCL", "DCY", "ALIS", "RBY", "SYS",
      "EXP", "BCY", "VEN", "BCN", "BLITZ", "UGT", "GVT", "MONA", "QASH",
      "DASH", "AUR", "UNO", "BURST", "REQ", "PART", "TRIG", "GCR", "LMC",
      "XEM", "BNB", "SNGLS", "BITSILVER", "PDC", "ELIX", "XVG", "DOPE", "LEND",
      "SNRG", "NLG", "ARDR", "QSP", "SALT", "SYNX", "GRC", "XDN", "PIVX",
      "DCT", "WAVES", "PTOY", "SIB", "LTC", "CPC", "NAS", "XMR", "LOCI",
      "ION", "VSX", "NXS", "XMY", "GBYTE", "XMG", "IGNIS", "ETP", "BWK",
      "FCT", "DRGN", "MUE", "XPM", "STEEM", "FTC", "SPHR", "DGB", "DGD",
      "SUB", "VOX", "MAID", "RPX", "AEON", "XAUR", "MIOTA", "CRC", "BET",
      "ENG", "XVJ", "POWR", "STORJ", "GUP", "UBQ", "SBD", "INFX", "LGD",
      "DYN", "INFR", "ONION", "MANA", "SLR", "FUN", "CURE", "BITB", "EMC2",
      "XZC", "IOTA", "COVAL", "AGRS", "PASC", "DOGE", "XRB", "SWT", "FLDC",
      "ZEC", "NBT", "XRP", "ETH", "RADS", "ETC", "PANGEA", "CLAM", "PHR",
      "APX", "BTC", "NEM", "NEO", "MYST", "START", "ENJ", "WTC", "PPT",
      "STR", "ARDOR", "ITZ", "BCPT", "ITC", "TAAS", "STRAT", "SEQ", "EDG",
  };

  cfg.per_ticker["NXT"] = make_rule({"plc"}, {"ignis", "ardor", "jelurida"});
  cfg.per_ticker["XLM"] =
      make_rule({"xlmedia"}, {"rocket", "moon", "$str", "worth", "now", "trx"});
  cfg.per_ticker["CRW"] = make_rule({"craneware"}, {});
  cfg.per_ticker["APH"] = make_rule({"weed", "fire", "emc", "cannabis", "medical",
                                     "amphenol", "aphria", "$app", "$acb"},
                                    {});
  cfg.per_ticker["BRK"] = make_rule({"amz", "aapl", "twtr", "berkshire", "buffet",
                                     "warren", "brookline", "brooks", "oil"},
                                    {});
  cfg.per_ticker["SKY"] = make_rule({"skyline", "fox"}, {});
  cfg.per_ticker["GBG"] = make_rule({"plc", "group"}, {});
  cfg.per_ticker["AMS"] = make_rule({"hospital", "medical"}, {});
  return cfg;
}

void read_word_list(const json &arr, const char *section,
                    std::set<std::string> &terms, std::set<std::string> &tickers,
                    bool stem_words) {
  if (!arr.is_array())
    throw make_error("SchemaError", std::string("heuristic config: \"") + section +
                                        "\" must be an array");
  for (const auto &e : arr) {
    if (!e.is_string())
      throw make_error("SchemaError",
                       std::string("heuristic config: entries in \"") + section +
                           "\" must be strings");
    add_entry(e.get<std::string>(), terms, tickers, stem_words);
  }
}

json word_list(const std::set<std::string> &terms,
               const std::set<std::string> &tickers) {
  json arr = json::array();
  for (const auto &t : terms) arr.push_back(t);
  for (const auto &t : tickers) arr.push_back("$" + t);
  return arr;
}

}  // namespace

const HeuristicConfig &default_config() {
  static const HeuristicConfig cfg = build_default();
  return cfg;
}

HeuristicConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw make_error("IoError", "cannot open heuristic config: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error &e) {
    throw make_error("SchemaError", "heuristic config: " + std::string(e.what()));
  }
  return config_from_json(root);
}

HeuristicConfig config_from_json(const json &root) {
  if (!root.is_object())
    throw make_error("SchemaError", "heuristic config: top level must be an object");
  const bool stem_words = !root.value("stemmed", false);

  HeuristicConfig cfg;
  if (root.contains("general_terms")) {
    std::set<std::string> tickers;
    read_word_list(root["general_terms"], "general_terms", cfg.general_crypto_terms,
                   tickers, stem_words);
    for (const auto &t : tickers) cfg.crypto_ticker_list.insert(t);
  }
  if (root.contains("crypto_tickers")) {
    if (!root["crypto_tickers"].is_array())
      throw make_error("SchemaError",
                       "heuristic config: \"crypto_tickers\" must be an array");
    for (const auto &e : root["crypto_tickers"]) {
      if (!e.is_string())
        throw make_error("SchemaError",
                         "heuristic config: ticker entries must be strings");
      std::string t = e.get<std::string>();
      if (!t.empty() && t[0] == '$') t.erase(0, 1);
      cfg.crypto_ticker_list.insert(upcase(t));
    }
  }
  if (root.contains("per_ticker")) {
    if (!root["per_ticker"].is_object())
      throw make_error("SchemaError",
                       "heuristic config: \"per_ticker\" must be an object");
    for (const auto &[ticker, rule_json] : root["per_ticker"].items()) {
      if (!rule_json.is_object())
        throw make_error("SchemaError", "heuristic config: rule for \"" + ticker +
                                            "\" must be an object");
      TickerRule rule;
      if (rule_json.contains("company"))
        read_word_list(rule_json["company"], "company", rule.company_terms,
                       rule.company_tickers, stem_words);
      if (rule_json.contains("crypto"))
        read_word_list(rule_json["crypto"], "crypto", rule.crypto_terms,
                       rule.crypto_tickers, stem_words);
      cfg.per_ticker[upcase(ticker)] = std::move(rule);
    }
  }
  return cfg;
}

json config_to_json(const HeuristicConfig &config) {
  json root;
  root["stemmed"] = true;
  root["general_terms"] = word_list(config.general_crypto_terms, {});
  json tickers = json::array();
  for (const auto &t : config.crypto_ticker_list) tickers.push_back(t);
  root["crypto_tickers"] = tickers;
  json per = json::object();
  for (const auto &[ticker, rule] : config.per_ticker) {
    per[ticker] = {{"company", word_list(rule.company_terms, rule.company_tickers)},
                   {"crypto", word_list(rule.crypto_terms, rule.crypto_tickers)}};
  }
  root["per_ticker"] = per;
  return root;
}

ClassLabel simple_filter(const textprep::TokenStream &stream,
                         const HeuristicConfig &config) {
  for (const auto &tok : stream.tokens)
    if (config.general_crypto_terms.count(tok)) return ClassLabel::Cryptocurrency;
  for (const auto &tag : stream.cashtags)
    if (config.crypto_ticker_list.count(tag)) return ClassLabel::Cryptocurrency;
  return ClassLabel::Company;
}

FilterResult extended_filter(const textprep::TokenStream &stream,
                             const HeuristicConfig &config) {
  bool company_vote = false;
  bool crypto_vote = false;
  std::vector<std::string> company_voters, crypto_voters;

  for (const auto &tag : stream.cashtags) {
    auto it = config.per_ticker.find(tag);
    if (it == config.per_ticker.end()) continue;
    const TickerRule &rule = it->second;
    bool company_hit = false, crypto_hit = false;
    for (const auto &tok : stream.tokens) {
      if (rule.company_terms.count(tok)) company_hit = true;
      if (rule.crypto_terms.count(tok)) crypto_hit = true;
    }
    for (const auto &other : stream.cashtags) {
      if (other == tag) continue;
      if (rule.company_tickers.count(other)) company_hit = true;
      if (rule.crypto_tickers.count(other)) crypto_hit = true;
    }
    if (company_hit) {
      company_vote = true;
      company_voters.push_back(tag);
    }
    if (crypto_hit) {
      crypto_vote = true;
      crypto_voters.push_back(tag);
    }
  }

  FilterResult result;
  if (company_vote && crypto_vote) {
    result.label = ClassLabel::Company;
    result.conflicting_tickers = company_voters;
    for (const auto &t : crypto_voters) {
      bool seen = false;
      for (const auto &c : result.conflicting_tickers) seen = seen || c == t;
      if (!seen) result.conflicting_tickers.push_back(t);
    }
  } else if (company_vote) {
    result.label = ClassLabel::Company;
  } else if (crypto_vote) {
    result.label = ClassLabel::Cryptocurrency;
  } else {
    result.label = simple_filter(stream, config);
  }
  return result;
}

// The record's own cashtag field is authoritative; body extraction only fills
// in when the record never carried tags.
ClassLabel simple_filter(const corpus::TweetRecord &record,
                         const HeuristicConfig &config) {
  textprep::TokenStream stream = textprep::preprocess(record.body);
  if (!record.cashtags.empty()) stream.cashtags = record.cashtags;
  return simple_filter(stream, config);
}

FilterResult extended_filter(const corpus::TweetRecord &record,
                             const HeuristicConfig &config) {
  textprep::TokenStream stream = textprep::preprocess(record.body);
  if (!record.cashtags.empty()) stream.cashtags = record.cashtags;
  return extended_filter(stream, config);
}

}  // namespace cashtag::heuristics
