#include "cashtag/models.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "cashtag/error.hpp"
#include "cashtag/eval.hpp"
#include "cashtag/manifest.hpp"
#include "cashtag/rng.hpp"

namespace cashtag::models {

using corpus::ClassLabel;
using features::Variant;

std::string to_string(ModelKind kind) {
  return kind == ModelKind::LogisticRegression ? "logistic-regression" : "margin";
}

ModelKind kind_from_string(const std::string &text) {
  if (text == "logistic-regression" || text == "lr") return ModelKind::LogisticRegression;
  if (text == "margin" || text == "svm") return ModelKind::MarginClassifier;
  throw make_error("SchemaError", "unknown model kind \"" + text + "\"");
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(const std::vector<double> &w, const std::vector<double> &x) {
  double z = 0;
  for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * x[k];
  return z;
}

double loss_value(ModelKind kind, int y, double z) {
  const double yz = static_cast<double>(y) * z;
  if (kind == ModelKind::LogisticRegression)
    return yz >= 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
  return std::max(0.0, 1.0 - yz);
}

// d(loss)/dz; the hinge keeps the zero side of its kink.
double loss_slope(ModelKind kind, int y, double z) {
  if (kind == ModelKind::LogisticRegression)
    return -static_cast<double>(y) * sigmoid(-static_cast<double>(y) * z);
  return 1.0 - static_cast<double>(y) * z > 0 ? -static_cast<double>(y) : 0.0;
}

void check_rows(const EncodedDataset &data, std::size_t width, const char *what) {
  for (const auto &row : data.x)
    if (row.size() != width)
      throw make_error("LayoutMismatch",
                       std::string(what) + " rows do not share one feature layout");
  if (data.y.size() != data.x.size())
    throw make_error("LayoutMismatch",
                     std::string(what) + " labels and rows differ in count");
}

bool is_embedding_variant(Variant v) {
  return v == Variant::EmbeddingCombined || v == Variant::EmbeddingIndependent;
}

bool uses_extended_filter(Variant v) {
  return v == Variant::Combined || v == Variant::EmbeddingCombined;
}

}  // namespace

double decision_value(const LinearModel &model, const std::vector<double> &x) {
  if (x.size() != model.weights.size())
    throw make_error("LayoutMismatch",
                     "feature vector length " + std::to_string(x.size()) +
                         " does not match model width " +
                         std::to_string(model.weights.size()));
  return dot(model.weights, x) + model.bias;
}

Decision predict(const LinearModel &model, const std::vector<double> &x,
                 double threshold) {
  const double z = decision_value(model, x);
  Decision d;
  d.threshold = threshold;
  d.score = model.kind == ModelKind::LogisticRegression ? sigmoid(z) : z;
  d.label = d.score >= threshold ? ClassLabel::Company : ClassLabel::Cryptocurrency;
  return d;
}

Decision predict(const LinearModel &model, const std::vector<double> &x) {
  return predict(model, x, model.threshold);
}

std::vector<double> sample_weights(const EncodedDataset &data, bool class_weighting) {
  std::vector<double> w(data.size(), 1.0);
  if (!class_weighting) return w;
  std::size_t pos = 0;
  for (int y : data.y)
    if (y > 0) ++pos;
  const std::size_t neg = data.size() - pos;
  if (pos == 0 || neg == 0) return w;
  const double wp = static_cast<double>(data.size()) / (2.0 * static_cast<double>(pos));
  const double wn = static_cast<double>(data.size()) / (2.0 * static_cast<double>(neg));
  for (std::size_t i = 0; i < data.size(); ++i) w[i] = data.y[i] > 0 ? wp : wn;
  return w;
}

double objective(const EncodedDataset &data, ModelKind kind,
                 const std::vector<double> &w, double b, double lambda,
                 const std::vector<double> &sw) {
  if (data.size() == 0) throw make_error("EmptyInput", "no rows to evaluate");
  if (sw.size() != data.size())
    throw make_error("LayoutMismatch", "sample weights do not match row count");
  check_rows(data, w.size(), "objective");
  double sum = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    sum += sw[i] * loss_value(kind, data.y[i], dot(w, data.x[i]) + b);
  double reg = 0;
  for (double v : w) reg += v * v;
  return sum / static_cast<double>(data.size()) + 0.5 * lambda * reg;
}

void objective_gradient(const EncodedDataset &data, ModelKind kind,
                        const std::vector<double> &w, double b, double lambda,
                        const std::vector<double> &sw, std::vector<double> &grad_w,
                        double &grad_b) {
  if (data.size() == 0) throw make_error("EmptyInput", "no rows to evaluate");
  if (sw.size() != data.size())
    throw make_error("LayoutMismatch", "sample weights do not match row count");
  check_rows(data, w.size(), "gradient");
  grad_w.assign(w.size(), 0.0);
  grad_b = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double slope = sw[i] * loss_slope(kind, data.y[i], dot(w, data.x[i]) + b);
    if (slope == 0) continue;
    const auto &x = data.x[i];
    for (std::size_t k = 0; k < w.size(); ++k) grad_w[k] += slope * x[k];
    grad_b += slope;
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    grad_w[k] = grad_w[k] * inv_n + lambda * w[k];
  grad_b *= inv_n;
}

namespace {

// F-score of the sign rule w.x+b >= 0 on the selection set; the default LR
// and margin thresholds both reduce to this sign test.
std::optional<double> selection_f_score(const EncodedDataset &sel,
                                        const std::vector<double> &w, double b) {
  eval::ConfusionCounts c;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const bool pred_pos = dot(w, sel.x[i]) + b >= 0;
    const bool gold_pos = sel.y[i] > 0;
    if (pred_pos && gold_pos)
      ++c.tp;
    else if (pred_pos)
      ++c.fp;
    else if (gold_pos)
      ++c.fn;
    else
      ++c.tn;
  }
  return eval::metrics(c).f_score;
}

struct RunResult {
  std::vector<double> w;
  double b = 0;
  std::size_t epochs = 0;
  std::optional<double> f;
  double f_cmp = 0;  // undefined F compares as 0
};

RunResult run_descent(const EncodedDataset &train_set, const EncodedDataset &sel,
                      ModelKind kind, double lambda, double lr,
                      const TrainConfig &cfg, const std::vector<double> &cw) {
  const std::size_t n = train_set.size();
  const std::size_t d = train_set.width();
  RunResult best;
  std::vector<double> w(d, 0.0);
  double b = 0;

  auto consider = [&](std::size_t epochs_done) {
    auto f = selection_f_score(sel, w, b);
    const double cmp = f.value_or(0.0);
    if (cmp > best.f_cmp || epochs_done == 0) {
      best.w = w;
      best.b = b;
      best.f = f;
      best.f_cmp = cmp;
      return true;
    }
    return false;
  };
  consider(0);  // the untrained model is the baseline snapshot

  std::mt19937_64 gen(mix_seed(cfg.seed));
  std::vector<double> grad_w;
  std::size_t stale = 0;
  std::size_t executed = 0;
  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    if (cfg.full_batch) {
      const double before = objective(train_set, kind, w, b, lambda, cw);
      double grad_b = 0;
      objective_gradient(train_set, kind, w, b, lambda, cw, grad_w, grad_b);
      double step = lr;
      bool moved = false;
      std::vector<double> cand(d);
      for (int halving = 0; halving < 60 && !moved; ++halving) {
        for (std::size_t k = 0; k < d; ++k) cand[k] = w[k] - step * grad_w[k];
        const double cand_b = b - step * grad_b;
        if (objective(train_set, kind, cand, cand_b, lambda, cw) <= before) {
          w = cand;
          b = cand_b;
          moved = true;
        } else {
          step *= 0.5;
        }
      }
      if (!moved) break;  // no step reduces the objective any further
    } else {
      auto order = shuffled_indices(n, gen);
      for (std::size_t i : order) {
        const auto &x = train_set.x[i];
        const double slope = cw[i] * loss_slope(kind, train_set.y[i], dot(w, x) + b);
        const double shrink = 1.0 - lr * lambda;
        for (std::size_t k = 0; k < d; ++k) w[k] = w[k] * shrink - lr * slope * x[k];
        b -= lr * slope;
      }
    }
    ++executed;
    if (consider(executed)) {
      stale = 0;
    } else {
      ++stale;
      if (stale >= cfg.patience) break;
    }
  }
  best.epochs = executed;
  return best;
}

}  // namespace

LinearModel train(const EncodedDataset &train_set, const EncodedDataset &tune_set,
                  ModelKind kind, Variant variant, const TrainConfig &config) {
  if (train_set.size() == 0)
    throw make_error("EmptyInput", "cannot train on an empty dataset");
  check_rows(train_set, train_set.width(), "training");
  if (tune_set.size() > 0) check_rows(tune_set, train_set.width(), "tune");
  if (config.lambdas.empty() || config.learning_rates.empty())
    throw make_error("InvalidConfig", "hyperparameter grid must be non-empty");
  if (config.patience == 0)
    throw make_error("InvalidConfig", "patience must be at least 1");

  std::size_t pos = 0;
  for (int y : train_set.y)
    if (y > 0) ++pos;
  if (pos == 0 || pos == train_set.size())
    throw make_error("SingleClassTrainingSet",
                     "training split contains a single class; nothing to separate");

  const std::vector<double> cw = sample_weights(train_set, config.class_weighting);
  const EncodedDataset &sel = tune_set.size() > 0 ? tune_set : train_set;

  bool have_best = false;
  RunResult best;
  double best_lambda = 0, best_lr = 0;
  for (double lambda : config.lambdas) {
    for (double lr : config.learning_rates) {
      RunResult r = run_descent(train_set, sel, kind, lambda, lr, config, cw);
      if (!have_best || r.f_cmp > best.f_cmp) {
        have_best = true;
        best = std::move(r);
        best_lambda = lambda;
        best_lr = lr;
      }
    }
  }

  LinearModel model;
  model.kind = kind;
  model.variant = variant;
  model.weights = std::move(best.w);
  model.bias = best.b;
  model.lambda = best_lambda;
  model.learning_rate = best_lr;
  model.threshold = kind == ModelKind::LogisticRegression ? 0.5 : 0.0;
  model.trained = true;
  model.epochs_run = best.epochs;
  model.selection_f = best.f;
  model.seed = config.seed;
  model.class_weighting = config.class_weighting;
  return model;
}

void Pipeline::rebuild_index() {
  if (embed)
    embed_index_ = embedding::make_index(embed->vocab);
  else
    embed_index_ = embedding::VocabIndex{};
}

std::vector<double> Pipeline::encode(const corpus::TweetRecord &record) const {
  auto stream = textprep::preprocess(record.body);
  if (!record.cashtags.empty()) stream.cashtags = record.cashtags;

  auto vec = features::encode_base(features::raw_features(record, homonym_tickers),
                                   schema);
  if (!schema.vocab.terms.empty()) {
    auto bits = features::encode_vocab(stream, schema.vocab);
    vec.insert(vec.end(), bits.begin(), bits.end());
  }
  if (schema.embedding_dim > 0) {
    if (!embed)
      throw make_error("MissingEmbedding",
                       "layout expects an embedding block but none is loaded");
    auto proj = embedding::project(stream, *embed, embed_index_);
    vec.insert(vec.end(), proj.begin(), proj.end());
  }
  if (schema.heuristic_bit) {
    const ClassLabel verdict = uses_extended_filter(schema.variant)
                                   ? heuristics::extended_filter(stream, heuristic).label
                                   : heuristics::simple_filter(stream, heuristic);
    vec.push_back(verdict == ClassLabel::Cryptocurrency ? 1.0 : 0.0);
  }
  return vec;
}

Decision Pipeline::classify(const corpus::TweetRecord &record, double threshold) const {
  return predict(model, encode(record), threshold);
}

Decision Pipeline::classify(const corpus::TweetRecord &record) const {
  return classify(record, model.threshold);
}

EncodedDataset encode_dataset(const Pipeline &pipeline, const corpus::Dataset &data,
                              bool require_labels) {
  EncodedDataset out;
  out.x.reserve(data.records.size());
  out.y.reserve(data.records.size());
  out.ids.reserve(data.records.size());
  for (const auto &record : data.records) {
    if (require_labels && !record.label)
      throw make_error("UnlabeledRecord", "record " + record.id + " has no label");
    out.x.push_back(pipeline.encode(record));
    out.y.push_back(record.label && *record.label == ClassLabel::Company ? 1 : -1);
    out.ids.push_back(record.id);
  }
  return out;
}

std::vector<std::string> default_homonym_tickers() {
  std::vector<std::string> tickers;
  for (const auto &[ticker, rule] : heuristics::default_config().per_ticker)
    tickers.push_back(ticker);
  return tickers;
}

Pipeline train_pipeline(Variant variant, const corpus::Dataset &train_set,
                        const corpus::Dataset &tune_set,
                        const PipelineTrainOptions &options) {
  Pipeline p;
  p.homonym_tickers = options.homonym_tickers.empty() ? default_homonym_tickers()
                                                      : options.homonym_tickers;
  p.heuristic = options.heuristic;
  p.schema = features::build_schema(variant, train_set, p.homonym_tickers);
  if (is_embedding_variant(variant)) {
    p.embed = options.pretrained ? *options.pretrained
                                 : embedding::train_embedding(train_set, options.embedding);
    p.schema.embedding_dim = p.embed->cols;
    p.rebuild_index();
  }
  p.data_fingerprint = manifest::fingerprint_dataset(train_set);

  EncodedDataset encoded_train = encode_dataset(p, train_set, true);
  EncodedDataset encoded_tune = encode_dataset(p, tune_set, true);
  p.model = train(encoded_train, encoded_tune, options.kind, variant, options.train);
  return p;
}

void save_pipeline(const Pipeline &pipeline, const std::string &model_path,
                   const std::string &embedding_path) {
  nlohmann::json j;
  j["version"] = 1;
  j["kind"] = to_string(pipeline.model.kind);
  j["variant"] = features::to_string(pipeline.model.variant);
  j["schema"] = features::schema_to_json(pipeline.schema);
  j["homonym_tickers"] = pipeline.homonym_tickers;
  j["weights"] = pipeline.model.weights;
  j["bias"] = pipeline.model.bias;
  j["threshold"] = pipeline.model.threshold;
  nlohmann::json t;
  t["seed"] = pipeline.model.seed;
  t["lambda"] = pipeline.model.lambda;
  t["learning_rate"] = pipeline.model.learning_rate;
  t["epochs_run"] = pipeline.model.epochs_run;
  t["selection_f"] =
      pipeline.model.selection_f ? nlohmann::json(*pipeline.model.selection_f)
                                 : nlohmann::json(nullptr);
  t["class_weighting"] = pipeline.model.class_weighting;
  t["data_fingerprint"] = pipeline.data_fingerprint;
  j["training"] = t;
  if (pipeline.schema.heuristic_bit)
    j["heuristic_config"] = heuristics::config_to_json(pipeline.heuristic);
  if (pipeline.embed) {
    if (embedding_path.empty())
      throw make_error("InvalidArgument",
                       "an embedding path is required to save this model");
    embedding::save_embedding(*pipeline.embed, embedding_path);
    j["embedding_file"] = {
        {"name", std::filesystem::path(embedding_path).filename().string()},
        {"fingerprint", manifest::fingerprint_file(embedding_path)}};
  }

  std::ofstream out(model_path, std::ios::binary);
  if (!out) throw make_error("IoError", "cannot open " + model_path + " for writing");
  out << j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  if (!out) throw make_error("IoError", "failed writing " + model_path);
}

Pipeline load_pipeline(const std::string &model_path) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) throw make_error("IoError", "cannot open " + model_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw make_error("SchemaError", std::string("invalid model file: ") + e.what());
  }
  if (!j.is_object() || j.value("version", 0) != 1)
    throw make_error("SchemaError", "unsupported model file version");

  Pipeline p;
  p.schema = features::schema_from_json(j.at("schema"));
  p.homonym_tickers = j.at("homonym_tickers").get<std::vector<std::string>>();
  p.model.kind = kind_from_string(j.at("kind").get<std::string>());
  p.model.variant = features::variant_from_string(j.at("variant").get<std::string>());
  p.model.weights = j.at("weights").get<std::vector<double>>();
  p.model.bias = j.at("bias").get<double>();
  p.model.threshold = j.at("threshold").get<double>();
  const auto &t = j.at("training");
  p.model.seed = t.at("seed").get<std::uint64_t>();
  p.model.lambda = t.at("lambda").get<double>();
  p.model.learning_rate = t.at("learning_rate").get<double>();
  p.model.epochs_run = t.at("epochs_run").get<std::size_t>();
  if (!t.at("selection_f").is_null())
    p.model.selection_f = t.at("selection_f").get<double>();
  p.model.class_weighting = t.at("class_weighting").get<bool>();
  p.data_fingerprint = t.at("data_fingerprint").get<std::string>();
  p.model.trained = true;

  if (p.model.weights.size() != p.schema.length())
    throw make_error("LayoutMismatch",
                     "stored weights do not match the stored feature layout");

  if (p.schema.heuristic_bit) {
    if (!j.contains("heuristic_config"))
      throw make_error("SchemaError",
                       "model needs its heuristic rules but the file has none");
    p.heuristic = heuristics::config_from_json(j.at("heuristic_config"));
  }
  if (j.contains("embedding_file")) {
    const auto &ref = j.at("embedding_file");
    const auto name = ref.at("name").get<std::string>();
    const auto expected = ref.at("fingerprint").get<std::string>();
    const auto epath =
        (std::filesystem::path(model_path).parent_path() / name).string();
    if (manifest::fingerprint_file(epath) != expected)
      throw make_error("EmbeddingMismatch",
                       "embedding file " + epath +
                           " does not match the fingerprint recorded in the model");
    p.embed = embedding::load_embedding(epath);
    p.rebuild_index();
  } else if (p.schema.embedding_dim > 0) {
    throw make_error("MissingEmbedding",
                     "layout expects an embedding block but the model references none");
  }
  return p;
}

}  // namespace cashtag::models
