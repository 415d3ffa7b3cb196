#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cashtag/corpus.hpp"

namespace cashtag::eval {

// Company is the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t total() const { return tp + fp + tn + fn; }
};

// Ratios are empty when their defining fraction is 0/0; reports render that
// as NA rather than pretending the value is zero.
struct EvalReport {
  ConfusionCounts counts;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> accuracy;
  std::optional<double> f_score;
  std::optional<double> auc;
  std::string model_id;
  std::string dataset_fingerprint;
};

ConfusionCounts confusion(const std::vector<corpus::ClassLabel> &predictions,
                          const std::vector<corpus::ClassLabel> &gold);

EvalReport metrics(const ConfusionCounts &counts);

// Area under the ROC in the rank formulation: the probability that a random
// positive outscores a random negative, ties counting half.  Scores must
// increase toward Company.
double auc(const std::vector<double> &scores,
           const std::vector<corpus::ClassLabel> &gold);

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

// Points of the ROC polyline swept over all distinct score thresholds.
std::vector<RocPoint> roc_points(const std::vector<double> &scores,
                                 const std::vector<corpus::ClassLabel> &gold);

// Correctness indicators for M classifiers over N shared objects.
struct CorrectnessMatrix {
  std::vector<std::vector<unsigned char>> correct;  // [model][object]
  std::size_t models() const { return correct.size(); }
  std::size_t objects() const { return correct.empty() ? 0 : correct[0].size(); }

  static CorrectnessMatrix from_predictions(
      const std::vector<std::vector<corpus::ClassLabel>> &predictions,
      const std::vector<corpus::ClassLabel> &gold);
};

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  int dof = 0;
};

// (B - C)^2 / (B + C) with one degree of freedom and no continuity
// correction.  B and C are the two discordant counts.
TestResult mcnemar_counts(std::int64_t b, std::int64_t c);
TestResult mcnemar(const std::vector<corpus::ClassLabel> &a,
                   const std::vector<corpus::ClassLabel> &b,
                   const std::vector<corpus::ClassLabel> &gold);

TestResult cochran_q(const CorrectnessMatrix &matrix);

// Statistics over a seeded disjoint partition into floor(N/size) subsets:
// each statistic is averaged across subsets and the p-value recomputed from
// the average.  Degenerate subsets are skipped and reported by index.
struct SubsetOutcome {
  std::optional<TestResult> averaged;
  std::vector<double> per_subset;        // statistic per contributing subset
  std::vector<double> per_subset_p;
  std::vector<std::size_t> skipped;      // subset indices with no defined value
};

struct SubsetProtocolResult {
  SubsetOutcome q;
  struct Pair {
    std::size_t first = 0;
    std::size_t second = 0;
    SubsetOutcome outcome;
  };
  std::vector<Pair> pairs;
  std::vector<std::vector<std::size_t>> partitions;  // object indices per subset
  std::size_t subset_size = 0;
  std::uint64_t seed = 0;
};

SubsetProtocolResult subset_protocol(const CorrectnessMatrix &matrix,
                                     std::size_t subset_size, std::uint64_t seed);

// Upper tail of the chi-squared distribution via the regularized incomplete
// gamma function.
double chi2_sf(double x, int dof);

}  // namespace cashtag::eval
