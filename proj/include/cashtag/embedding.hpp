#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/features.hpp"
#include "cashtag/textprep.hpp"

namespace cashtag::embedding {

struct EmbeddingConfig {
  std::size_t vocab_size = 2000;  // total rows, reserved slots included
  std::size_t embed_dim = 32;
  std::size_t hidden_dim = 64;
  std::size_t epochs = 5;
  double learning_rate = 0.1;
  double grad_clip = 5.0;          // per-update global norm ceiling, 0 = off
  double max_doc_fraction = 0.5;   // stems above this document share are dropped
  std::uint64_t seed = 1;
};

// Reserved vocabulary entries.  Stems are drawn from [a-z0-9] so the angle
// brackets cannot collide with a real token.
inline constexpr const char *kOovToken = "<oov>";
inline constexpr const char *kBreakToken = "<eol>";

struct VocabBuildResult {
  features::Vocabulary vocab;  // most frequent stems, then <oov>, then <eol>
  bool truncated = false;      // corpus had fewer eligible stems than requested
};

// Most frequent stems, excluding observed cashtag names and stems present in
// more than max_doc_fraction of the tweets; frequency ties break toward the
// lexicographically smaller stem.
VocabBuildResult build_embedding_vocab(const corpus::Dataset &data,
                                       const EmbeddingConfig &config);

struct Embedding {
  EmbeddingConfig config;
  features::Vocabulary vocab;
  bool vocab_truncated = false;
  std::size_t rows = 0;  // vocab.terms.size()
  std::size_t cols = 0;  // config.embed_dim
  // Row-major matrix.  Entries are snapped to multiples of 2^-30 after
  // training, which makes projection sums exact: every partial sum of such
  // values is itself representable, so tweet projections add without
  // rounding.
  std::vector<double> values;
  std::vector<double> loss_per_epoch;
};

Embedding train_embedding(const corpus::Dataset &data, const EmbeddingConfig &config);

// Token -> row lookup; build once when projecting many records.
struct VocabIndex {
  std::unordered_map<std::string, int> ids;
  int oov_id = 0;
  int break_id = 0;
};
VocabIndex make_index(const features::Vocabulary &vocab);

// Term-count vector over the vocabulary (unknown tokens count into the OOV
// row) multiplied by the matrix.
std::vector<double> project(const textprep::TokenStream &stream, const Embedding &emb,
                            const VocabIndex &index);
std::vector<double> project(const textprep::TokenStream &stream, const Embedding &emb);
std::vector<double> project(const corpus::TweetRecord &record, const Embedding &emb);

nlohmann::json embedding_to_json(const Embedding &emb);
Embedding embedding_from_json(const nlohmann::json &j);
void save_embedding(const Embedding &emb, const std::string &path);
Embedding load_embedding(const std::string &path);

// Nearest multiple of 2^-30.
double quantize_value(double v);

// Single-layer LSTM language model parameters, flat row-major storage.  Gate
// block order inside Wx / Wh / b is input, forget, output, candidate.
struct LstmParams {
  std::size_t vocab = 0;
  std::size_t dim = 0;
  std::size_t hidden = 0;
  std::vector<double> E;   // vocab x dim, input embedding
  std::vector<double> Wx;  // 4*hidden x dim
  std::vector<double> Wh;  // 4*hidden x hidden
  std::vector<double> b;   // 4*hidden
  std::vector<double> Wy;  // vocab x hidden
  std::vector<double> by;  // vocab

  std::size_t size() const {
    return E.size() + Wx.size() + Wh.size() + b.size() + Wy.size() + by.size();
  }
};

// Weights uniform in [-0.08, 0.08] drawn in declaration order, biases zero.
LstmParams init_params(std::size_t vocab, std::size_t dim, std::size_t hidden,
                       std::mt19937_64 &gen);

// Token ids with the break id appended; unknown tokens map to the OOV id.
std::vector<int> sequence_ids(const std::vector<std::string> &tokens,
                              const VocabIndex &index);

// Mean cross-entropy per predicted position, pooled over all sequences.
// Sequences shorter than two ids contribute nothing.
double lm_loss(const LstmParams &p, const std::vector<std::vector<int>> &sequences);
LstmParams lm_loss_gradient(const LstmParams &p,
                            const std::vector<std::vector<int>> &sequences);

// Distribution over the next token after consuming the prefix left to right.
// An empty prefix runs one step from the zero state with a zero input vector.
std::vector<double> next_token_distribution(const LstmParams &p,
                                            const std::vector<int> &prefix);

}  // namespace cashtag::embedding
