#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/embedding.hpp"
#include "cashtag/features.hpp"
#include "cashtag/heuristics.hpp"

namespace cashtag::models {

enum class ModelKind { LogisticRegression, MarginClassifier };

std::string to_string(ModelKind kind);
ModelKind kind_from_string(const std::string &text);

// Feature rows with labels mapped to the margin convention: Company = +1,
// Cryptocurrency = -1.
struct EncodedDataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<std::string> ids;

  std::size_t size() const { return x.size(); }
  std::size_t width() const { return x.empty() ? 0 : x[0].size(); }
};

struct TrainConfig {
  std::vector<double> lambdas = {1e-4, 1e-3, 1e-2, 1e-1};
  std::vector<double> learning_rates = {0.01, 0.1};
  std::size_t max_epochs = 200;
  std::size_t patience = 10;  // epochs without tune F improvement before stopping
  std::uint64_t seed = 0;
  // Per-class loss weights n/(2*n_class); keeps the 97%-crypto corpus from
  // collapsing to the all-crypto model.
  bool class_weighting = true;
  // Deterministic full-gradient descent with step halving instead of
  // per-sample SGD.  Slower; used where tests need a monotone objective.
  bool full_batch = false;
};

struct LinearModel {
  ModelKind kind = ModelKind::LogisticRegression;
  features::Variant variant = features::Variant::Basic;
  std::vector<double> weights;
  double bias = 0;
  double lambda = 0;
  double learning_rate = 0;
  // Decision threshold on the score: sigmoid(w.x+b) >= threshold for LR
  // (default 0.5), w.x+b >= threshold for the margin classifier (default 0).
  double threshold = 0.5;
  bool trained = false;
  std::size_t epochs_run = 0;
  std::optional<double> selection_f;  // tune F-score of the selected grid point
  std::uint64_t seed = 0;
  bool class_weighting = true;
};

struct Decision {
  corpus::ClassLabel label = corpus::ClassLabel::Cryptocurrency;
  double score = 0;
  double threshold = 0;
};

double decision_value(const LinearModel &model, const std::vector<double> &x);
Decision predict(const LinearModel &model, const std::vector<double> &x,
                 double threshold);
Decision predict(const LinearModel &model, const std::vector<double> &x);

// Grid search over (lambda, learning_rate); each candidate is trained by
// seeded SGD with early stopping on tune F-score and the best snapshot kept.
// Ties keep the first grid point.  An empty tune set falls back to selecting
// on training F-score.
LinearModel train(const EncodedDataset &train_set, const EncodedDataset &tune_set,
                  ModelKind kind, features::Variant variant,
                  const TrainConfig &config);

// Regularized weighted empirical risk: mean_i c_i * loss_i + lambda/2 |w|^2
// (bias unregularized).  Exposed for the finite-difference and monotonicity
// tests.
double objective(const EncodedDataset &data, ModelKind kind,
                 const std::vector<double> &w, double b, double lambda,
                 const std::vector<double> &sample_weights);
void objective_gradient(const EncodedDataset &data, ModelKind kind,
                        const std::vector<double> &w, double b, double lambda,
                        const std::vector<double> &sample_weights,
                        std::vector<double> &grad_w, double &grad_b);
std::vector<double> sample_weights(const EncodedDataset &data, bool class_weighting);

// A trained classifier with everything needed to score a raw record: feature
// layout, the ticker set treated as homonyms, the heuristic rules behind the
// verdict bit, and the embedding for the dense block.
struct Pipeline {
  features::FeatureSchema schema;
  std::vector<std::string> homonym_tickers;
  heuristics::HeuristicConfig heuristic;       // used when schema.heuristic_bit
  std::optional<embedding::Embedding> embed;   // used when schema.embedding_dim > 0
  LinearModel model;
  std::string data_fingerprint;

  // Derived lookup for the embedding block; call after setting `embed`.
  void rebuild_index();

  std::vector<double> encode(const corpus::TweetRecord &record) const;
  Decision classify(const corpus::TweetRecord &record) const;
  Decision classify(const corpus::TweetRecord &record, double threshold) const;

 private:
  embedding::VocabIndex embed_index_;
};

EncodedDataset encode_dataset(const Pipeline &pipeline, const corpus::Dataset &data,
                              bool require_labels);

// Builds the schema from the training split, trains the embedding first when
// the variant needs one and none is supplied, then grid-trains the linear
// model.
struct PipelineTrainOptions {
  ModelKind kind = ModelKind::LogisticRegression;
  TrainConfig train;
  embedding::EmbeddingConfig embedding;  // used when training an embedding inline
  std::optional<embedding::Embedding> pretrained;  // reuse instead of training
  std::vector<std::string> homonym_tickers;        // empty = built-in rule tickers
  heuristics::HeuristicConfig heuristic = heuristics::default_config();
};

Pipeline train_pipeline(features::Variant variant, const corpus::Dataset &train_set,
                        const corpus::Dataset &tune_set,
                        const PipelineTrainOptions &options);

// Model artifact: one JSON file; Embedding variants reference a sibling
// embedding file by name and fingerprint.
void save_pipeline(const Pipeline &pipeline, const std::string &model_path,
                   const std::string &embedding_path);
Pipeline load_pipeline(const std::string &model_path);

// Tickers whose per-ticker rules exist in the built-in heuristic config; the
// default homonym set.
std::vector<std::string> default_homonym_tickers();

}  // namespace cashtag::models
