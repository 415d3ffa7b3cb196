#include "cashtag/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cashtag/error.hpp"
#include "cashtag/porter.hpp"
#include "cashtag/timeutil.hpp"

namespace cashtag::features {

using corpus::ClassLabel;
using corpus::Dataset;
using corpus::TweetRecord;

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Basic: return "basic";
    case Variant::Extended: return "extended";
    case Variant::Combined: return "combined";
    case Variant::IndependentCombined: return "independent-combined";
    case Variant::EmbeddingCombined: return "embedding-combined";
    case Variant::EmbeddingIndependent: return "embedding-independent";
  }
  return "basic";
}

Variant variant_from_string(const std::string &text) {
  if (text == "basic") return Variant::Basic;
  if (text == "extended") return Variant::Extended;
  if (text == "combined") return Variant::Combined;
  if (text == "independent-combined") return Variant::IndependentCombined;
  if (text == "embedding-combined") return Variant::EmbeddingCombined;
  if (text == "embedding-independent") return Variant::EmbeddingIndependent;
  throw make_error("InvalidSpec", "unknown model variant \"" + text + "\"");
}

namespace {

Vocabulary stemmed_vocabulary(VocabularyKind kind,
                              std::initializer_list<const char *> words) {
  Vocabulary v;
  v.kind = kind;
  std::set<std::string> seen;
  for (const char *w : words) {
    std::string lower;
    for (const char *p = w; *p; ++p)
      lower += (*p >= 'A' && *p <= 'Z') ? static_cast<char>(*p - 'A' + 'a') : *p;
    std::string stem = porter_stem(lower);
    if (seen.insert(stem).second) v.terms.push_back(std::move(stem));
  }
  return v;
}

}  // namespace

const Vocabulary &extended_vocabulary() {
  static const Vocabulary v = stemmed_vocabulary(
      VocabularyKind::ExtendedSVM,
      {"binance", "bitcoin", "signal", "join", "crypto", "fee", "plc", "inc",
       "group", "company", "finance", "weed", "aapl", "moon", "cannabis",
       "berkshire", "brooks", "ltc", "eth", "dash", "xrp", "xmr", "xem", "nem",
       "rocket", "jelurida", "ignis", "medical", "buffet", "warren", "stellar"});
  return v;
}

const Vocabulary &independent_vocabulary() {
  static const Vocabulary v = stemmed_vocabulary(
      VocabularyKind::IndependentSVM,
      {"binance", "bitcoin", "signal", "join", "crypto", "fee", "plc", "inc",
       "group", "company", "finance", "aapl", "moon", "ltc", "eth", "dash",
       "xrp", "xmr", "xem", "nem", "rocket"});
  return v;
}

RawFeatures raw_features(const TweetRecord &record,
                         const std::vector<std::string> &homonym_tickers) {
  RawFeatures raw;
  raw.ticker = "other";
  for (const auto &tag : record.cashtags) {
    bool homonym = std::find(homonym_tickers.begin(), homonym_tickers.end(), tag) !=
                   homonym_tickers.end();
    if (homonym) {
      raw.ticker = tag;
      break;
    }
  }
  if (raw.ticker == "other" && !record.cashtags.empty()) raw.ticker = record.cashtags[0];

  raw.weekday = weekday_from_seconds(record.created_at);
  raw.hour = hour_from_seconds(record.created_at);
  raw.log_followers = std::log10(static_cast<double>(record.user.followers) + 1.0);
  raw.log_friends = std::log10(static_cast<double>(record.user.friends) + 1.0);
  raw.log_favorites = std::log2(static_cast<double>(record.user.favorites) + 1.0);

  std::set<std::string> distinct(record.cashtags.begin(), record.cashtags.end());
  raw.log_dollars = std::log2(static_cast<double>(distinct.size()) + 1.0);

  raw.default_profile = record.user.default_profile;
  raw.halfyear = halfyear_index(record.user.account_created_at);
  return raw;
}

std::size_t FeatureSchema::numeric_length() const {
  // weekday, weekend flag, log transforms x4, default_profile, plus hour.
  return include_hour ? 8 : 7;
}

std::size_t FeatureSchema::length() const {
  std::size_t n = numeric_length();
  if (include_ticker) n += tickers.size() + 1;
  if (halfyear_max >= halfyear_min) n += static_cast<std::size_t>(halfyear_max - halfyear_min + 1);
  n += 2;  // older / newer overflow slots
  n += vocab.terms.size();
  n += embedding_dim;
  if (heuristic_bit) n += 1;
  return n;
}

std::vector<std::string> FeatureSchema::position_names() const {
  std::vector<std::string> names = {"weekday", "weekend"};
  if (include_hour) names.push_back("hour");
  names.insert(names.end(), {"log_followers", "log_friends", "log_favorites",
                             "log_dollars", "default_profile"});
  if (include_ticker) {
    for (const auto &t : tickers) names.push_back("ticker:" + t);
    names.push_back("ticker:other");
  }
  names.push_back("halfyear:older");
  for (int h = halfyear_min; h <= halfyear_max; ++h) {
    int year = h / 2;
    names.push_back("halfyear:" + std::to_string(year) + (h % 2 ? "H2" : "H1"));
  }
  names.push_back("halfyear:newer");
  for (const auto &t : vocab.terms) names.push_back("word:" + t);
  for (std::size_t i = 0; i < embedding_dim; ++i)
    names.push_back("embed:" + std::to_string(i));
  if (heuristic_bit) names.push_back("heuristic_verdict");
  return names;
}

FeatureSchema build_schema(Variant variant, const Dataset &train,
                           const std::vector<std::string> &homonym_tickers) {
  if (train.records.empty())
    throw make_error("EmptyDataset", "cannot build a feature layout from no records");

  FeatureSchema schema;
  schema.variant = variant;
  switch (variant) {
    case Variant::Basic:
      break;
    case Variant::Extended:
      schema.vocab = extended_vocabulary();
      break;
    case Variant::Combined:
      schema.vocab = extended_vocabulary();
      schema.heuristic_bit = true;
      break;
    case Variant::IndependentCombined:
      schema.include_ticker = false;
      schema.include_hour = false;
      schema.vocab = independent_vocabulary();
      schema.heuristic_bit = true;
      break;
    case Variant::EmbeddingCombined:
      schema.heuristic_bit = true;
      break;
    case Variant::EmbeddingIndependent:
      schema.include_ticker = false;
      schema.include_hour = false;
      schema.heuristic_bit = true;
      break;
  }

  std::set<std::string> tickers;
  bool first = true;
  for (const auto &r : train.records) {
    RawFeatures raw = raw_features(r, homonym_tickers);
    if (schema.include_ticker && raw.ticker != "other") tickers.insert(raw.ticker);
    if (first) {
      schema.halfyear_min = schema.halfyear_max = raw.halfyear;
      first = false;
    } else {
      schema.halfyear_min = std::min(schema.halfyear_min, raw.halfyear);
      schema.halfyear_max = std::max(schema.halfyear_max, raw.halfyear);
    }
  }
  schema.tickers.assign(tickers.begin(), tickers.end());
  return schema;
}

std::vector<double> encode_base(const RawFeatures &raw, const FeatureSchema &schema) {
  std::vector<double> x;
  x.reserve(schema.length());

  // Weekdays scale into [0, 1]; weekend posts get a flag of their own instead
  // of stretching the scale.
  x.push_back(std::min(raw.weekday, 4) / 4.0);
  x.push_back(raw.weekday >= 5 ? 1.0 : 0.0);
  if (schema.include_hour) x.push_back(raw.hour / 23.0);
  x.push_back(raw.log_followers);
  x.push_back(raw.log_friends);
  x.push_back(raw.log_favorites);
  x.push_back(raw.log_dollars);
  x.push_back(raw.default_profile ? 1.0 : 0.0);

  if (schema.include_ticker) {
    std::size_t hot = schema.tickers.size();  // "other" by default
    for (std::size_t i = 0; i < schema.tickers.size(); ++i)
      if (schema.tickers[i] == raw.ticker) hot = i;
    for (std::size_t i = 0; i <= schema.tickers.size(); ++i)
      x.push_back(i == hot ? 1.0 : 0.0);
  }

  const int buckets = schema.halfyear_max >= schema.halfyear_min
                          ? schema.halfyear_max - schema.halfyear_min + 1
                          : 0;
  int hot = 0;  // older
  if (raw.halfyear > schema.halfyear_max)
    hot = buckets + 1;  // newer
  else if (raw.halfyear >= schema.halfyear_min)
    hot = 1 + (raw.halfyear - schema.halfyear_min);
  for (int i = 0; i < buckets + 2; ++i) x.push_back(i == hot ? 1.0 : 0.0);
  return x;
}

std::vector<double> encode_vocab(const textprep::TokenStream &stream,
                                 const Vocabulary &vocab) {
  std::set<std::string> present(stream.tokens.begin(), stream.tokens.end());
  std::vector<double> bits;
  bits.reserve(vocab.terms.size());
  for (const auto &term : vocab.terms)
    bits.push_back(present.count(term) ? 1.0 : 0.0);
  return bits;
}

std::vector<double> encode_basic(const TweetRecord &record, const FeatureSchema &schema,
                                 const std::vector<std::string> &homonym_tickers) {
  std::vector<double> x = encode_base(raw_features(record, homonym_tickers), schema);
  if (!schema.vocab.terms.empty()) {
    auto bits = encode_vocab(textprep::preprocess(record.body), schema.vocab);
    x.insert(x.end(), bits.begin(), bits.end());
  }
  return x;
}

namespace {

const char *vocab_kind_name(VocabularyKind k) {
  switch (k) {
    case VocabularyKind::ExtendedSVM: return "extended_svm";
    case VocabularyKind::IndependentSVM: return "independent_svm";
    case VocabularyKind::EmbeddingTopK: return "embedding_topk";
  }
  return "extended_svm";
}

VocabularyKind vocab_kind_from_name(const std::string &name) {
  if (name == "extended_svm") return VocabularyKind::ExtendedSVM;
  if (name == "independent_svm") return VocabularyKind::IndependentSVM;
  if (name == "embedding_topk") return VocabularyKind::EmbeddingTopK;
  throw make_error("SchemaError", "unknown vocabulary kind \"" + name + "\"");
}

}  // namespace

nlohmann::json schema_to_json(const FeatureSchema &schema) {
  nlohmann::json j;
  j["version"] = 1;
  j["variant"] = to_string(schema.variant);
  j["include_ticker"] = schema.include_ticker;
  j["include_hour"] = schema.include_hour;
  j["tickers"] = schema.tickers;
  j["halfyear_min"] = schema.halfyear_min;
  j["halfyear_max"] = schema.halfyear_max;
  j["vocab_kind"] = vocab_kind_name(schema.vocab.kind);
  j["vocab_terms"] = schema.vocab.terms;
  j["embedding_dim"] = schema.embedding_dim;
  j["heuristic_bit"] = schema.heuristic_bit;
  return j;
}

FeatureSchema schema_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("version"))
    throw make_error("SchemaError", "feature layout: missing version");
  if (j["version"].get<int>() != 1)
    throw make_error("SchemaError", "feature layout: unsupported version");
  FeatureSchema schema;
  schema.variant = variant_from_string(j.at("variant").get<std::string>());
  schema.include_ticker = j.at("include_ticker").get<bool>();
  schema.include_hour = j.at("include_hour").get<bool>();
  schema.tickers = j.at("tickers").get<std::vector<std::string>>();
  schema.halfyear_min = j.at("halfyear_min").get<int>();
  schema.halfyear_max = j.at("halfyear_max").get<int>();
  schema.vocab.kind = vocab_kind_from_name(j.at("vocab_kind").get<std::string>());
  schema.vocab.terms = j.at("vocab_terms").get<std::vector<std::string>>();
  schema.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  schema.heuristic_bit = j.at("heuristic_bit").get<bool>();
  return schema;
}

namespace {

struct ClassStats {
  std::vector<double> ticker_counts;
  std::vector<double> followers;
  std::vector<double> friends;
  std::vector<double> favorites;
  std::vector<std::int64_t> hours;      // histogram 0..23
  std::vector<std::int64_t> halfyears;  // creation half-year indices
  std::int64_t default_profile = 0;
  std::int64_t verified = 0;
  std::int64_t total = 0;
};

double mean_of(const std::vector<double> &v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void summary_rows(std::ostringstream &out, const std::string &cls,
                  const std::string &stat, const std::vector<double> &values) {
  out << cls << ',' << stat << ",mean," << fmt(mean_of(values)) << '\n';
  out << cls << ',' << stat << ",median," << fmt(median_of(values)) << '\n';
}

}  // namespace

std::string explore_report_csv(const Dataset &dataset) {
  if (dataset.records.empty())
    throw make_error("EmptyDataset", "explore needs at least one record");
  for (const auto &r : dataset.records)
    if (!r.label)
      throw make_error("UnlabeledRecord", "record \"" + r.id + "\" has no label");

  std::map<ClassLabel, ClassStats> stats;
  for (const auto &r : dataset.records) {
    ClassStats &s = stats[*r.label];
    std::set<std::string> distinct(r.cashtags.begin(), r.cashtags.end());
    s.ticker_counts.push_back(static_cast<double>(distinct.size()));
    s.followers.push_back(static_cast<double>(r.user.followers));
    s.friends.push_back(static_cast<double>(r.user.friends));
    s.favorites.push_back(static_cast<double>(r.user.favorites));
    if (s.hours.empty()) s.hours.assign(24, 0);
    s.hours[static_cast<std::size_t>(hour_from_seconds(r.created_at))] += 1;
    s.halfyears.push_back(halfyear_index(r.user.account_created_at));
    s.default_profile += r.user.default_profile ? 1 : 0;
    s.verified += r.user.verified ? 1 : 0;
    s.total += 1;
  }

  std::ostringstream out;
  out << "class,statistic,bucket,value\n";
  for (const auto &[label, s] : stats) {
    const std::string cls = corpus::to_string(label);
    const auto total = static_cast<double>(s.total);
    out << cls << ",records,count," << s.total << '\n';
    summary_rows(out, cls, "ticker_count", s.ticker_counts);
    summary_rows(out, cls, "followers", s.followers);
    summary_rows(out, cls, "friends", s.friends);
    summary_rows(out, cls, "favorites", s.favorites);
    for (int h = 0; h < 24; ++h)
      out << cls << ",hour," << h << ','
          << fmt(static_cast<double>(s.hours[static_cast<std::size_t>(h)]) / total) << '\n';
    // Share of posts inside the 10:00-18:00 working window.
    std::int64_t in_window = 0;
    for (int h = 10; h < 18; ++h) in_window += s.hours[static_cast<std::size_t>(h)];
    out << cls << ",hour,share_10_18," << fmt(static_cast<double>(in_window) / total) << '\n';

    std::map<int, std::int64_t> hy_hist;
    for (int hy : s.halfyears) hy_hist[hy] += 1;
    for (const auto &[hy, count] : hy_hist) {
      int year = hy / 2;
      out << cls << ",account_halfyear," << year << (hy % 2 ? "H2" : "H1") << ','
          << fmt(static_cast<double>(count) / total) << '\n';
    }
    out << cls << ",default_profile,rate,"
        << fmt(static_cast<double>(s.default_profile) / total) << '\n';
    out << cls << ",verified,rate," << fmt(static_cast<double>(s.verified) / total) << '\n';
  }
  return out.str();
}

}  // namespace cashtag::features
