#include "cashtag/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cashtag/error.hpp"
#include "cashtag/rng.hpp"

namespace cashtag::eval {

using corpus::ClassLabel;

ConfusionCounts confusion(const std::vector<ClassLabel> &predictions,
                          const std::vector<ClassLabel> &gold) {
  if (predictions.size() != gold.size())
    throw make_error("LengthMismatch",
                     "predictions and gold labels differ in length (" +
                         std::to_string(predictions.size()) + " vs " +
                         std::to_string(gold.size()) + ")");
  if (predictions.empty()) throw make_error("EmptyInput", "no labels to score");

  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool pred_pos = predictions[i] == ClassLabel::Company;
    const bool gold_pos = gold[i] == ClassLabel::Company;
    if (pred_pos && gold_pos)
      ++c.tp;
    else if (pred_pos && !gold_pos)
      ++c.fp;
    else if (!pred_pos && gold_pos)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport metrics(const ConfusionCounts &c) {
  EvalReport r;
  r.counts = c;
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  r.specificity = ratio(c.tn, c.tn + c.fp);
  r.accuracy = ratio(c.tp + c.tn, c.total());
  if (r.precision && r.recall) {
    const double p = *r.precision, q = *r.recall;
    if (p + q > 0)
      r.f_score = 2 * p * q / (p + q);
    else
      r.f_score = std::nullopt;  // both zero: harmonic mean is 0/0
  }
  return r;
}

double auc(const std::vector<double> &scores, const std::vector<ClassLabel> &gold) {
  if (scores.size() != gold.size())
    throw make_error("LengthMismatch", "scores and gold labels differ in length");
  if (scores.empty()) throw make_error("EmptyInput", "no scores to rank");

  std::size_t n_pos = 0, n_neg = 0;
  for (auto g : gold) (g == ClassLabel::Company ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw make_error("SingleClassInput", "AUC needs both classes present");

  // Midrank formulation: sum positive ranks, ties sharing their average rank.
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  double pos_rank_sum = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k)
      if (gold[order[k]] == ClassLabel::Company) pos_rank_sum += midrank;
    i = j;
  }
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1) / 2.0) / (np * nn);
}

std::vector<RocPoint> roc_points(const std::vector<double> &scores,
                                 const std::vector<ClassLabel> &gold) {
  if (scores.size() != gold.size())
    throw make_error("LengthMismatch", "scores and gold labels differ in length");
  if (scores.empty()) throw make_error("EmptyInput", "no scores to rank");
  std::size_t n_pos = 0, n_neg = 0;
  for (auto g : gold) (g == ClassLabel::Company ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw make_error("SingleClassInput", "ROC needs both classes present");

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  std::vector<RocPoint> points;
  points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::int64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    // Everything predicted Company at threshold = this score value.
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (gold[order[j]] == ClassLabel::Company)
        ++tp;
      else
        ++fp;
      ++j;
    }
    points.push_back({scores[order[i]],
                      static_cast<double>(fp) / static_cast<double>(n_neg),
                      static_cast<double>(tp) / static_cast<double>(n_pos)});
    i = j;
  }
  return points;
}

CorrectnessMatrix CorrectnessMatrix::from_predictions(
    const std::vector<std::vector<ClassLabel>> &predictions,
    const std::vector<ClassLabel> &gold) {
  if (predictions.empty()) throw make_error("EmptyInput", "no prediction sets");
  CorrectnessMatrix m;
  m.correct.reserve(predictions.size());
  for (const auto &preds : predictions) {
    if (preds.size() != gold.size())
      throw make_error("LengthMismatch",
                       "prediction set length differs from gold labels");
    std::vector<unsigned char> row(gold.size());
    for (std::size_t j = 0; j < gold.size(); ++j) row[j] = preds[j] == gold[j] ? 1 : 0;
    m.correct.push_back(std::move(row));
  }
  return m;
}

TestResult mcnemar_counts(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0) throw make_error("DomainError", "discordant counts must be >= 0");
  if (b + c == 0)
    throw make_error("NoDisagreement",
                     "the two classifiers never disagree; the test is undefined");
  const double diff = static_cast<double>(b - c);
  TestResult r;
  r.statistic = diff * diff / static_cast<double>(b + c);
  r.dof = 1;
  r.p_value = chi2_sf(r.statistic, 1);
  return r;
}

TestResult mcnemar(const std::vector<ClassLabel> &a, const std::vector<ClassLabel> &b,
                   const std::vector<ClassLabel> &gold) {
  if (a.size() != gold.size() || b.size() != gold.size())
    throw make_error("LengthMismatch", "prediction sets and gold labels differ in length");
  if (gold.empty()) throw make_error("EmptyInput", "no labels to compare");
  std::int64_t first_only = 0, second_only = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool ca = a[i] == gold[i];
    const bool cb = b[i] == gold[i];
    if (ca && !cb) ++first_only;
    if (!ca && cb) ++second_only;
  }
  return mcnemar_counts(first_only, second_only);
}

TestResult cochran_q(const CorrectnessMatrix &matrix) {
  const std::size_t m = matrix.models();
  const std::size_t n = matrix.objects();
  if (m < 2) throw make_error("DomainError", "Cochran's Q needs at least two classifiers");
  if (n == 0) throw make_error("EmptyInput", "no objects in the correctness matrix");

  // G_i: correct counts per classifier; M_j: correct counts per object.
  double sum_g = 0, sum_g2 = 0, sum_mj2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double g = 0;
    for (std::size_t j = 0; j < n; ++j) g += matrix.correct[i][j];
    sum_g += g;
    sum_g2 += g * g;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double mj = 0;
    for (std::size_t i = 0; i < m; ++i) mj += matrix.correct[i][j];
    sum_mj2 += mj * mj;
  }
  const double t = sum_g;
  const double md = static_cast<double>(m);
  const double denom = md * t - sum_mj2;
  if (denom == 0)
    throw make_error("DegenerateAgreement",
                     "every object is classified identically by all models");
  TestResult r;
  r.statistic = (md - 1.0) * (md * sum_g2 - t * t) / denom;
  r.dof = static_cast<int>(m) - 1;
  r.p_value = chi2_sf(r.statistic, r.dof);
  return r;
}

namespace {

CorrectnessMatrix slice(const CorrectnessMatrix &matrix,
                        const std::vector<std::size_t> &objects) {
  CorrectnessMatrix out;
  out.correct.reserve(matrix.models());
  for (const auto &row : matrix.correct) {
    std::vector<unsigned char> sub;
    sub.reserve(objects.size());
    for (std::size_t j : objects) sub.push_back(row[j]);
    out.correct.push_back(std::move(sub));
  }
  return out;
}

void finalize(SubsetOutcome &outcome, int dof) {
  if (outcome.per_subset.empty()) return;
  double sum = 0;
  for (double v : outcome.per_subset) sum += v;
  TestResult r;
  r.statistic = sum / static_cast<double>(outcome.per_subset.size());
  r.dof = dof;
  r.p_value = chi2_sf(r.statistic, dof);
  outcome.averaged = r;
}

}  // namespace

SubsetProtocolResult subset_protocol(const CorrectnessMatrix &matrix,
                                     std::size_t subset_size, std::uint64_t seed) {
  const std::size_t n = matrix.objects();
  const std::size_t m = matrix.models();
  if (subset_size == 0) throw make_error("DomainError", "subset size must be positive");
  if (subset_size > n)
    throw make_error("SubsetTooLarge", "subset size " + std::to_string(subset_size) +
                                           " exceeds object count " + std::to_string(n));
  if (m < 2) throw make_error("DomainError", "need at least two classifiers");

  SubsetProtocolResult result;
  result.subset_size = subset_size;
  result.seed = seed;

  const std::size_t n_subsets = n / subset_size;
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> order = shuffled_indices(n, gen);
  for (std::size_t s = 0; s < n_subsets; ++s) {
    std::vector<std::size_t> part(order.begin() + static_cast<std::ptrdiff_t>(s * subset_size),
                                  order.begin() + static_cast<std::ptrdiff_t>((s + 1) * subset_size));
    result.partitions.push_back(std::move(part));
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      result.pairs.push_back({i, j, {}});

  for (std::size_t s = 0; s < n_subsets; ++s) {
    CorrectnessMatrix sub = slice(matrix, result.partitions[s]);
    try {
      TestResult q = cochran_q(sub);
      result.q.per_subset.push_back(q.statistic);
      result.q.per_subset_p.push_back(q.p_value);
    } catch (const Error &) {
      result.q.skipped.push_back(s);
    }
    for (auto &pair : result.pairs) {
      std::int64_t b = 0, c = 0;
      for (std::size_t j = 0; j < subset_size; ++j) {
        const bool ca = sub.correct[pair.first][j] != 0;
        const bool cb = sub.correct[pair.second][j] != 0;
        if (ca && !cb) ++b;
        if (!ca && cb) ++c;
      }
      if (b + c == 0) {
        pair.outcome.skipped.push_back(s);
        continue;
      }
      TestResult t = mcnemar_counts(b, c);
      pair.outcome.per_subset.push_back(t.statistic);
      pair.outcome.per_subset_p.push_back(t.p_value);
    }
  }

  finalize(result.q, static_cast<int>(m) - 1);
  for (auto &pair : result.pairs) finalize(pair.outcome, 1);
  if (!result.q.averaged)
    throw make_error("DegenerateAgreement",
                     "every subset degenerated; Cochran's Q is undefined");
  return result;
}

namespace {

// Regularized incomplete gamma pair.  Series for the lower part when x is
// small relative to a, Lentz continued fraction for the upper part otherwise;
// both converge quickly in the chi-squared parameter range used here.
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double upper_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_sf(double x, int dof) {
  if (dof < 1) throw make_error("DomainError", "degrees of freedom must be >= 1");
  if (!(x >= 0) || !std::isfinite(x))
    throw make_error("DomainError", "chi-squared statistic must be finite and >= 0");
  if (x == 0) return 1.0;
  const double a = 0.5 * static_cast<double>(dof);
  const double half_x = 0.5 * x;
  if (half_x < a + 1.0) return 1.0 - lower_series(a, half_x);
  return upper_continued_fraction(a, half_x);
}

}  // namespace cashtag::eval
