#include "cashtag/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "cashtag/error.hpp"
#include "cashtag/rng.hpp"
#include "cashtag/textprep.hpp"
#include "cashtag/timeutil.hpp"

namespace cashtag::corpus {

using nlohmann::json;

std::string to_string(ClassLabel label) {
  return label == ClassLabel::Company ? "company" : "cryptocurrency";
}

ClassLabel label_from_string(const std::string &text) {
  if (text == "company") return ClassLabel::Company;
  if (text == "cryptocurrency") return ClassLabel::Cryptocurrency;
  throw make_error("SchemaError", "unknown label \"" + text + "\"");
}

namespace {

std::int64_t require_count(const json &obj, const char *key) {
  if (!obj.contains(key) || !obj[key].is_number_integer())
    throw make_error("SchemaError", std::string("missing or non-integer \"") + key + "\"");
  std::int64_t v = obj[key].get<std::int64_t>();
  if (v < 0)
    throw make_error("SchemaError", std::string("negative count in \"") + key + "\"");
  return v;
}

std::string require_string(const json &obj, const char *key) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw make_error("SchemaError", std::string("missing or non-string \"") + key + "\"");
  return obj[key].get<std::string>();
}

bool require_bool(const json &obj, const char *key) {
  if (!obj.contains(key) || !obj[key].is_boolean())
    throw make_error("SchemaError", std::string("missing or non-boolean \"") + key + "\"");
  return obj[key].get<bool>();
}

TweetRecord record_from_json(const json &obj) {
  if (!obj.is_object()) throw make_error("SchemaError", "line is not a JSON object");
  TweetRecord r;
  r.id = require_string(obj, "id");
  if (r.id.empty()) throw make_error("SchemaError", "empty id");
  r.body = require_string(obj, "body");
  r.created_at = parse_timestamp(require_string(obj, "created_at"));

  if (!obj.contains("user") || !obj["user"].is_object())
    throw make_error("SchemaError", "missing \"user\" object");
  const json &u = obj["user"];
  r.user.followers = require_count(u, "followers");
  r.user.friends = require_count(u, "friends");
  r.user.favorites = require_count(u, "favorites");
  r.user.default_profile = require_bool(u, "default_profile");
  r.user.account_created_at = parse_timestamp(require_string(u, "account_created_at"));
  r.user.description = require_string(u, "description");
  r.user.verified = require_bool(u, "verified");
  if (r.user.account_created_at > r.created_at)
    throw make_error("SchemaError", "account_created_at is after the tweet timestamp");

  if (obj.contains("label")) {
    if (!obj["label"].is_string())
      throw make_error("SchemaError", "label must be a string");
    r.label = label_from_string(obj["label"].get<std::string>());
  }

  if (obj.contains("cashtags")) {
    if (!obj["cashtags"].is_array())
      throw make_error("SchemaError", "cashtags must be an array");
    for (const auto &t : obj["cashtags"]) {
      if (!t.is_string()) throw make_error("SchemaError", "cashtag entries must be strings");
      std::string ticker = t.get<std::string>();
      if (!textprep::is_valid_ticker(ticker))
        throw make_error("SchemaError", "invalid ticker \"" + ticker + "\"");
      for (char &c : ticker)
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      r.cashtags.push_back(std::move(ticker));
    }
  } else {
    r.cashtags = textprep::extract_cashtags(r.body);
  }

  if (obj.contains("hashtags")) {
    if (!obj["hashtags"].is_array())
      throw make_error("SchemaError", "hashtags must be an array");
    for (const auto &t : obj["hashtags"]) {
      if (!t.is_string()) throw make_error("SchemaError", "hashtag entries must be strings");
      std::string tag = t.get<std::string>();
      for (char &c : tag)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      r.hashtags.push_back(std::move(tag));
    }
  } else {
    r.hashtags = textprep::extract_hashtags(r.body);
  }
  return r;
}

}  // namespace

Dataset load_dataset(const std::string &path, bool lenient,
                     std::vector<std::string> *skipped) {
  std::ifstream in(path);
  if (!in) throw make_error("IoError", "cannot open dataset file: " + path);

  Dataset ds;
  ds.provenance = path;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      json obj = json::parse(line, nullptr, true);
      TweetRecord r = record_from_json(obj);
      if (!seen_ids.insert(r.id).second)
        throw make_error("DuplicateId", "duplicate id \"" + r.id + "\"");
      ds.records.push_back(std::move(r));
    } catch (const json::parse_error &e) {
      if (!lenient)
        throw make_error("SchemaError",
                         "line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
      if (skipped) skipped->push_back("line " + std::to_string(line_no) + ": invalid JSON");
    } catch (const Error &e) {
      if (!lenient)
        throw make_error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
      if (skipped) skipped->push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return ds;
}

std::string record_to_json_line(const TweetRecord &r) {
  json u;
  u["account_created_at"] = format_timestamp(r.user.account_created_at);
  u["default_profile"] = r.user.default_profile;
  u["description"] = r.user.description;
  u["favorites"] = r.user.favorites;
  u["followers"] = r.user.followers;
  u["friends"] = r.user.friends;
  u["verified"] = r.user.verified;

  json obj;
  obj["body"] = r.body;
  obj["cashtags"] = r.cashtags;
  obj["created_at"] = format_timestamp(r.created_at);
  obj["hashtags"] = r.hashtags;
  obj["id"] = r.id;
  if (r.label) obj["label"] = to_string(*r.label);
  obj["user"] = u;
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

void save_dataset(const Dataset &dataset, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw make_error("IoError", "cannot write dataset file: " + path);
  for (const auto &r : dataset.records) out << record_to_json_line(r) << '\n';
  if (!out) throw make_error("IoError", "write failed: " + path);
}

namespace {

Dataset subset_by_indices(const Dataset &ds, std::vector<std::size_t> indices,
                          const std::string &tag) {
  std::sort(indices.begin(), indices.end());
  Dataset out;
  out.provenance = ds.provenance.empty() ? tag : ds.provenance + ":" + tag;
  out.records.reserve(indices.size());
  for (std::size_t i : indices) out.records.push_back(ds.records[i]);
  return out;
}

// Shuffles the index pool and carves train/tune/test according to the
// requested fractions.  Appends results into the three accumulators (used once per
// stratum when stratifying).
void carve(const std::vector<std::size_t> &pool, const SplitSpec &spec,
           std::mt19937_64 &gen, std::vector<std::size_t> &train,
           std::vector<std::size_t> &tune, std::vector<std::size_t> &test) {
  std::vector<std::size_t> order = pool;
  shuffle_in_place(order, gen);
  const std::size_t n = order.size();
  // The epsilon keeps products like 0.7 * N from truncating one below the
  // intended floor when they round down by an ulp.
  const auto portion =
      static_cast<std::size_t>(spec.train_fraction * static_cast<double>(n) + 1e-9);
  const auto n_tune = static_cast<std::size_t>(
      spec.tune_fraction_of_train * static_cast<double>(portion) + 1e-9);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < portion - n_tune)
      train.push_back(order[i]);
    else if (i < portion)
      tune.push_back(order[i]);
    else
      test.push_back(order[i]);
  }
}

}  // namespace

SplitResult split(const Dataset &dataset, const SplitSpec &spec) {
  if (dataset.records.empty()) throw make_error("EmptyDataset", "cannot split an empty dataset");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw make_error("InvalidSpec", "train_fraction must lie in (0, 1)");
  if (!(spec.tune_fraction_of_train >= 0.0 && spec.tune_fraction_of_train < 1.0))
    throw make_error("InvalidSpec", "tune_fraction_of_train must lie in [0, 1)");
  for (const auto &r : dataset.records)
    if (!r.label)
      throw make_error("UnlabeledRecord", "record \"" + r.id + "\" has no label");

  std::mt19937_64 gen(spec.seed);
  std::vector<std::size_t> train, tune, test;
  if (spec.stratified_by_label) {
    std::vector<std::size_t> company, crypto;
    for (std::size_t i = 0; i < dataset.records.size(); ++i)
      (dataset.records[i].label == ClassLabel::Company ? company : crypto).push_back(i);
    carve(company, spec, gen, train, tune, test);
    carve(crypto, spec, gen, train, tune, test);
  } else {
    std::vector<std::size_t> all(dataset.records.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    carve(all, spec, gen, train, tune, test);
  }

  SplitResult out;
  out.train = subset_by_indices(dataset, std::move(train), "train");
  out.tune = subset_by_indices(dataset, std::move(tune), "tune");
  out.test = subset_by_indices(dataset, std::move(test), "test");
  return out;
}

}  // namespace cashtag::corpus
