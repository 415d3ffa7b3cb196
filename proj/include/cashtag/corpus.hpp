#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cashtag::corpus {

// Company is the positive class everywhere: confusion counts, metrics and
// decision thresholds all treat "is this a company tweet" as the question.
enum class ClassLabel { Company, Cryptocurrency };

std::string to_string(ClassLabel label);
ClassLabel label_from_string(const std::string &text);

struct UserProfile {
  std::int64_t followers = 0;
  std::int64_t friends = 0;
  std::int64_t favorites = 0;
  bool default_profile = false;
  std::int64_t account_created_at = 0;  // UTC seconds
  std::string description;
  bool verified = false;
};

struct TweetRecord {
  std::string id;
  std::string body;
  std::int64_t created_at = 0;  // UTC seconds
  std::vector<std::string> cashtags;  // uppercase tickers, order of appearance
  std::vector<std::string> hashtags;  // lowercase
  UserProfile user;
  std::optional<ClassLabel> label;
};

struct Dataset {
  std::vector<TweetRecord> records;
  std::string provenance;
};

struct SplitSpec {
  double train_fraction = 0.70;
  double tune_fraction_of_train = 0.10;
  std::uint64_t seed = 0;
  bool stratified_by_label = false;
};

struct SplitResult {
  Dataset train;
  Dataset tune;
  Dataset test;
};

// JSON Lines, one record per line.  Strict mode throws SchemaError with the
// offending line number on the first malformed record; lenient mode skips bad
// lines and reports them through `skipped` when provided.
Dataset load_dataset(const std::string &path, bool lenient = false,
                     std::vector<std::string> *skipped = nullptr);

// Canonical serialization: fixed key order, one line per record.  Loading a
// saved file and saving again reproduces the bytes exactly.
void save_dataset(const Dataset &dataset, const std::string &path);

std::string record_to_json_line(const TweetRecord &record);

// Seeded disjoint partition.  The train portion holds floor(train_fraction*N)
// records, the tune set floor(tune_fraction_of_train * portion) of those, the
// test set the rest.  Each part keeps records in original dataset order.
SplitResult split(const Dataset &dataset, const SplitSpec &spec);

}  // namespace cashtag::corpus
