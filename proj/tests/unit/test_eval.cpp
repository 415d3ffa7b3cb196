#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "cashtag/error.hpp"
#include "cashtag/eval.hpp"
#include "cashtag/rng.hpp"

using namespace cashtag;
using namespace cashtag::eval;
using corpus::ClassLabel;

namespace {

const ClassLabel kPos = ClassLabel::Company;
const ClassLabel kNeg = ClassLabel::Cryptocurrency;

std::vector<ClassLabel> random_labels(std::mt19937_64 &gen, std::size_t n,
                                      double p_positive) {
  std::vector<ClassLabel> v(n);
  for (auto &l : v) l = uniform_unit(gen) < p_positive ? kPos : kNeg;
  return v;
}

// Rank-free brute force: count concordant and tied (positive, negative)
// score pairs directly.
double auc_brute(const std::vector<double> &scores,
                 const std::vector<ClassLabel> &gold) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] != kPos) continue;
    for (std::size_t j = 0; j < gold.size(); ++j) {
      if (gold[j] != kNeg) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

}  // namespace

TEST_CASE("confusion matches a direct tally") {
  std::mt19937_64 gen(42);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 1 + bounded_uint64(gen, 300);
    auto pred = random_labels(gen, n, 0.4);
    auto gold = random_labels(gen, n, 0.2);
    ConfusionCounts c = confusion(pred, gold);
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (gold[i] == kPos) (pred[i] == kPos ? tp : fn)++;
      else (pred[i] == kPos ? fp : tn)++;
    }
    CHECK(c.tp == tp);
    CHECK(c.fp == fp);
    CHECK(c.tn == tn);
    CHECK(c.fn == fn);
    CHECK(c.total() == static_cast<std::int64_t>(n));
  }
}

TEST_CASE("confusion rejects bad shapes") {
  CHECK_THROWS_AS(confusion({kPos}, {kPos, kNeg}), Error);
  CHECK_THROWS_AS(confusion({}, {}), Error);
}

TEST_CASE("metrics follow the defining ratios") {
  ConfusionCounts c;
  c.tp = 40; c.fp = 10; c.tn = 30; c.fn = 20;
  EvalReport r = metrics(c);
  CHECK(*r.precision == doctest::Approx(40.0 / 50.0));
  CHECK(*r.recall == doctest::Approx(40.0 / 60.0));
  CHECK(*r.specificity == doctest::Approx(30.0 / 40.0));
  CHECK(*r.accuracy == doctest::Approx(70.0 / 100.0));
  const double p = 40.0 / 50.0, q = 40.0 / 60.0;
  CHECK(*r.f_score == doctest::Approx(2 * p * q / (p + q)));
}

TEST_CASE("undefined ratios stay empty instead of becoming zero") {
  ConfusionCounts no_pred_pos;  // never predicted positive
  no_pred_pos.tn = 5; no_pred_pos.fn = 3;
  EvalReport r = metrics(no_pred_pos);
  CHECK_FALSE(r.precision.has_value());
  CHECK(*r.recall == 0.0);
  CHECK_FALSE(r.f_score.has_value());

  ConfusionCounts no_gold_pos;  // no positives in gold
  no_gold_pos.tn = 4; no_gold_pos.fp = 2;
  EvalReport r2 = metrics(no_gold_pos);
  CHECK_FALSE(r2.recall.has_value());
  CHECK(*r2.precision == 0.0);

  ConfusionCounts both_zero;
  both_zero.tn = 9;
  EvalReport r3 = metrics(both_zero);
  CHECK_FALSE(r3.precision.has_value());
  CHECK_FALSE(r3.recall.has_value());
  CHECK_FALSE(r3.f_score.has_value());
  CHECK(*r3.accuracy == 1.0);
}

TEST_CASE("auc hits the closed-form corners") {
  std::vector<ClassLabel> gold = {kPos, kPos, kNeg, kNeg};
  CHECK(auc({0.9, 0.8, 0.2, 0.1}, gold) == doctest::Approx(1.0));
  CHECK(auc({0.1, 0.2, 0.8, 0.9}, gold) == doctest::Approx(0.0));
  CHECK(auc({0.5, 0.5, 0.5, 0.5}, gold) == doctest::Approx(0.5));
}

TEST_CASE("auc equals the pairwise win rate under heavy ties") {
  std::mt19937_64 gen(7);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + bounded_uint64(gen, 120);
    std::vector<ClassLabel> gold = random_labels(gen, n, 0.3);
    // Force both classes to be present.
    gold[0] = kPos;
    gold[n - 1] = kNeg;
    std::vector<double> scores(n);
    // Quantized scores so tied pairs are common.
    for (auto &s : scores) s = bounded_uint64(gen, 6) / 5.0;
    CHECK(auc(scores, gold) == doctest::Approx(auc_brute(scores, gold)).epsilon(1e-12));
  }
}

TEST_CASE("auc input validation") {
  CHECK_THROWS_AS(auc({0.5}, {kPos}), Error);            // single class
  CHECK_THROWS_AS(auc({0.5, 0.4}, {kPos}), Error);       // length mismatch
  CHECK_THROWS_AS(auc({}, {}), Error);                   // empty
}

TEST_CASE("roc sweep is monotone and its trapezoid area is the auc") {
  std::mt19937_64 gen(11);
  std::vector<ClassLabel> gold = random_labels(gen, 200, 0.25);
  gold[0] = kPos;
  gold[1] = kNeg;
  std::vector<double> scores(gold.size());
  for (auto &s : scores) s = bounded_uint64(gen, 12) / 11.0;

  std::vector<RocPoint> pts = roc_points(scores, gold);
  REQUIRE(pts.size() >= 2);
  CHECK(std::isinf(pts.front().threshold));
  CHECK(pts.front().fpr == 0.0);
  CHECK(pts.front().tpr == 0.0);
  CHECK(pts.back().fpr == 1.0);
  CHECK(pts.back().tpr == 1.0);
  double area = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].fpr >= pts[i - 1].fpr);
    CHECK(pts[i].tpr >= pts[i - 1].tpr);
    area += (pts[i].fpr - pts[i - 1].fpr) * (pts[i].tpr + pts[i - 1].tpr) / 2.0;
  }
  CHECK(area == doctest::Approx(auc(scores, gold)).epsilon(1e-12));
}

TEST_CASE("mcnemar counts form") {
  TestResult r = mcnemar_counts(5, 0);
  CHECK(r.statistic == 5.0);
  CHECK(r.dof == 1);
  CHECK(r.p_value == doctest::Approx(chi2_sf(5.0, 1)));
  TestResult sym = mcnemar_counts(3, 9);
  CHECK(sym.statistic == doctest::Approx(36.0 / 12.0));
  CHECK_THROWS_AS(mcnemar_counts(0, 0), Error);
  CHECK_THROWS_AS(mcnemar_counts(-1, 2), Error);
}

TEST_CASE("mcnemar over labels counts only disagreements") {
  //           gold:  P  P  P  N  N  N
  std::vector<ClassLabel> gold = {kPos, kPos, kPos, kNeg, kNeg, kNeg};
  std::vector<ClassLabel> a    = {kPos, kPos, kNeg, kNeg, kPos, kNeg};
  std::vector<ClassLabel> b    = {kPos, kNeg, kNeg, kNeg, kNeg, kPos};
  // Correctness by hand: a right at {0,1,3,5}, b right at {0,3,4}.
  // a-only B = {1,5}, b-only C = {4} -> (2-1)^2 / 3.
  TestResult r = mcnemar(a, b, gold);
  CHECK(r.statistic == doctest::Approx(1.0 / 3.0));
  CHECK(r.p_value == doctest::Approx(chi2_sf(1.0 / 3.0, 1)));
}

TEST_CASE("cochran q matches a hand computation") {
  // Three classifiers, four objects; correctness matrix rows:
  //   m0: 1 1 0 1 ; m1: 1 0 0 1 ; m2: 0 1 1 1
  CorrectnessMatrix m;
  m.correct = {{1, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 1}};
  // G = (3,2,3), T = 8; column sums L = (2,2,1,3).
  // Q = (M-1) (M*sum G^2 - T^2) / (M*T - sum L^2)
  //   = 2 * (3*22 - 64) / (24 - 18) = 2 * 2 / 6 = 2/3.
  TestResult r = cochran_q(m);
  CHECK(r.statistic == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.dof == 2);
  CHECK(r.p_value == doctest::Approx(chi2_sf(2.0 / 3.0, 2)));
}

TEST_CASE("cochran q with two rows reduces to mcnemar") {
  std::mt19937_64 gen(23);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 10 + bounded_uint64(gen, 200);
    CorrectnessMatrix m;
    m.correct.assign(2, std::vector<unsigned char>(n));
    for (auto &row : m.correct)
      for (auto &c : row) c = static_cast<unsigned char>(bounded_uint64(gen, 2));
    std::int64_t b = 0, c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.correct[0][i] && !m.correct[1][i]) ++b;
      if (!m.correct[0][i] && m.correct[1][i]) ++c;
    }
    if (b + c == 0) continue;
    CHECK(cochran_q(m).statistic ==
          doctest::Approx(mcnemar_counts(b, c).statistic).epsilon(1e-12));
  }
}

TEST_CASE("degenerate agreement is an error, not a zero") {
  CorrectnessMatrix all_agree;
  all_agree.correct = {{1, 0, 1}, {1, 0, 1}};
  CHECK_THROWS_AS(cochran_q(all_agree), Error);
  CorrectnessMatrix one_row;
  one_row.correct = {{1, 0, 1}};
  CHECK_THROWS_AS(cochran_q(one_row), Error);
}

TEST_CASE("correctness matrix from predictions") {
  std::vector<ClassLabel> gold = {kPos, kNeg, kPos};
  std::vector<std::vector<ClassLabel>> preds = {
      {kPos, kNeg, kNeg},
      {kNeg, kNeg, kPos},
  };
  CorrectnessMatrix m = CorrectnessMatrix::from_predictions(preds, gold);
  REQUIRE(m.models() == 2);
  REQUIRE(m.objects() == 3);
  CHECK(m.correct[0] == std::vector<unsigned char>{1, 1, 0});
  CHECK(m.correct[1] == std::vector<unsigned char>{0, 1, 1});
}

// Chi-squared survival oracle: SF_1(x) = erfc(sqrt(x/2)), SF_2(x) = e^{-x/2},
// and SF_{v+2}(x) = SF_v(x) + (x/2)^{v/2} e^{-x/2} / Gamma(v/2 + 1).
namespace {
double chi2_sf_oracle(double x, int dof) {
  if (dof % 2 == 1) {
    double sf = std::erfc(std::sqrt(x / 2.0));
    for (int v = 1; v + 2 <= dof; v += 2)
      sf += std::pow(x / 2.0, v / 2.0) * std::exp(-x / 2.0) /
            std::tgamma(v / 2.0 + 1.0);
    return sf;
  }
  double sf = std::exp(-x / 2.0);
  for (int v = 2; v + 2 <= dof; v += 2)
    sf += std::pow(x / 2.0, v / 2.0) * std::exp(-x / 2.0) /
          std::tgamma(v / 2.0 + 1.0);
  return sf;
}
}  // namespace

TEST_CASE("chi squared survival matches the recurrence oracle") {
  for (int dof = 1; dof <= 12; ++dof) {
    for (double x : {1e-6, 0.01, 0.1, 0.5, 1.0, 2.0, 3.841, 5.0, 5.991, 9.21,
                     15.0, 25.0, 40.0, 80.0}) {
      const double got = chi2_sf(x, dof);
      const double want = chi2_sf_oracle(x, dof);
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("chi squared survival edge behavior") {
  CHECK(chi2_sf(0.0, 1) == 1.0);
  CHECK(chi2_sf(0.0, 7) == 1.0);
  CHECK(chi2_sf(1e4, 1) < 1e-100);
  for (int dof : {1, 2, 5}) {
    double prev = 1.0;
    for (double x = 0.5; x < 30; x += 0.5) {
      const double v = chi2_sf(x, dof);
      CHECK(v < prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(chi2_sf(-1.0, 1), Error);
  CHECK_THROWS_AS(chi2_sf(1.0, 0), Error);
  CHECK_THROWS_AS(chi2_sf(std::nan(""), 1), Error);
}

namespace {
CorrectnessMatrix random_matrix(std::mt19937_64 &gen, std::size_t models,
                                std::size_t objects) {
  CorrectnessMatrix m;
  m.correct.assign(models, std::vector<unsigned char>(objects));
  for (auto &row : m.correct)
    for (auto &c : row) c = static_cast<unsigned char>(bounded_uint64(gen, 2));
  return m;
}
}  // namespace

TEST_CASE("subset protocol partitions are disjoint, seeded, and sized") {
  std::mt19937_64 gen(31);
  CorrectnessMatrix m = random_matrix(gen, 3, 2500);
  SubsetProtocolResult r1 = subset_protocol(m, 700, 99);
  SubsetProtocolResult r2 = subset_protocol(m, 700, 99);
  REQUIRE(r1.partitions.size() == 3);  // floor(2500 / 700)
  CHECK(r1.partitions == r2.partitions);
  std::set<std::size_t> seen;
  for (const auto &part : r1.partitions) {
    CHECK(part.size() == 700);
    for (std::size_t idx : part) {
      CHECK(idx < 2500);
      CHECK(seen.insert(idx).second);
    }
  }
  SubsetProtocolResult r3 = subset_protocol(m, 700, 100);
  CHECK(r1.partitions != r3.partitions);
}

TEST_CASE("subset protocol averages the per-subset statistics") {
  std::mt19937_64 gen(37);
  CorrectnessMatrix m = random_matrix(gen, 3, 3000);
  SubsetProtocolResult r = subset_protocol(m, 600, 5);
  REQUIRE(r.q.averaged.has_value());
  REQUIRE(r.q.per_subset.size() + r.q.skipped.size() == 5);
  double mean = 0;
  for (double v : r.q.per_subset) mean += v;
  mean /= r.q.per_subset.size();
  CHECK(r.q.averaged->statistic == doctest::Approx(mean).epsilon(1e-15));
  CHECK(r.q.averaged->p_value ==
        doctest::Approx(chi2_sf(mean, r.q.averaged->dof)).epsilon(1e-15));
  REQUIRE(r.pairs.size() == 3);  // all unordered pairs of three models
}

TEST_CASE("subset protocol validates its inputs") {
  std::mt19937_64 gen(41);
  CorrectnessMatrix m = random_matrix(gen, 2, 50);
  CHECK_THROWS_AS(subset_protocol(m, 0, 1), Error);
  CHECK_THROWS_AS(subset_protocol(m, 51, 1), Error);
  CorrectnessMatrix single;
  single.correct = {{1, 0, 1}};
  CHECK_THROWS_AS(subset_protocol(single, 1, 1), Error);
}

TEST_CASE("subsets with no disagreement are skipped and reported") {
  // Two classifiers that disagree on exactly one object; most subsets of a
  // fine partition see identical predictions only.
  CorrectnessMatrix m;
  const std::size_t n = 40;
  m.correct.assign(2, std::vector<unsigned char>(n, 1));
  m.correct[1][3] = 0;
  SubsetProtocolResult r = subset_protocol(m, 10, 2);
  REQUIRE(r.pairs.size() == 1);
  const SubsetOutcome &o = r.pairs[0].outcome;
  CHECK(o.per_subset.size() == 1);
  CHECK(o.skipped.size() == 3);
  REQUIRE(o.averaged.has_value());
  CHECK(o.averaged->statistic == doctest::Approx(1.0));
}
