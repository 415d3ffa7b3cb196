#include "cashtag/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "cashtag/error.hpp"
#include "cashtag/porter.hpp"
#include "cashtag/rng.hpp"

namespace cashtag::embedding {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using ConstMap = Eigen::Map<const Mat>;
using MutMap = Eigen::Map<Mat>;

std::string lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void validate_config(const EmbeddingConfig &c) {
  if (c.vocab_size < 2)
    throw make_error("InvalidConfig", "vocab_size must be at least 2 (reserved slots)");
  if (c.embed_dim < 1 || c.embed_dim > c.vocab_size)
    throw make_error("InvalidConfig", "need vocab_size >= embed_dim >= 1");
  if (c.hidden_dim < 1) throw make_error("InvalidConfig", "hidden_dim must be >= 1");
  if (!(c.learning_rate > 0))
    throw make_error("InvalidConfig", "learning_rate must be positive");
  if (!(c.max_doc_fraction > 0 && c.max_doc_fraction <= 1))
    throw make_error("InvalidConfig", "max_doc_fraction must be in (0, 1]");
}

}  // namespace

VocabBuildResult build_embedding_vocab(const corpus::Dataset &data,
                                       const EmbeddingConfig &config) {
  validate_config(config);

  // Stems matching an observed cashtag name carry ticker identity, not
  // language, so they stay out of the vocabulary.
  std::unordered_map<std::string, std::int64_t> freq;
  std::unordered_map<std::string, std::int64_t> doc_freq;
  std::unordered_set<std::string> ticker_stems;
  for (const auto &record : data.records) {
    auto stream = textprep::preprocess(record.body);
    const auto &tags = record.cashtags.empty() ? stream.cashtags : record.cashtags;
    for (const auto &tag : tags) {
      std::string low = lower(tag);
      ticker_stems.insert(low);
      ticker_stems.insert(porter_stem(low));
    }
    std::unordered_set<std::string> seen;
    for (const auto &tok : stream.tokens) {
      ++freq[tok];
      if (seen.insert(tok).second) ++doc_freq[tok];
    }
  }

  const double doc_cap = config.max_doc_fraction * static_cast<double>(data.records.size());
  std::vector<std::pair<std::string, std::int64_t>> eligible;
  eligible.reserve(freq.size());
  for (const auto &[term, count] : freq) {
    if (ticker_stems.count(term)) continue;
    if (static_cast<double>(doc_freq[term]) > doc_cap) continue;
    eligible.emplace_back(term, count);
  }
  std::sort(eligible.begin(), eligible.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  const std::size_t want = config.vocab_size - 2;
  VocabBuildResult out;
  out.vocab.kind = features::VocabularyKind::EmbeddingTopK;
  out.truncated = eligible.size() < want;
  const std::size_t take = std::min(want, eligible.size());
  out.vocab.terms.reserve(take + 2);
  for (std::size_t i = 0; i < take; ++i) out.vocab.terms.push_back(eligible[i].first);
  out.vocab.terms.push_back(kOovToken);
  out.vocab.terms.push_back(kBreakToken);
  return out;
}

VocabIndex make_index(const features::Vocabulary &vocab) {
  VocabIndex index;
  index.oov_id = -1;
  index.break_id = -1;
  for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
    const auto &term = vocab.terms[i];
    if (term == kOovToken)
      index.oov_id = static_cast<int>(i);
    else if (term == kBreakToken)
      index.break_id = static_cast<int>(i);
    else
      index.ids.emplace(term, static_cast<int>(i));
  }
  if (index.oov_id < 0 || index.break_id < 0)
    throw make_error("SchemaError", "embedding vocabulary lacks its reserved slots");
  return index;
}

std::vector<int> sequence_ids(const std::vector<std::string> &tokens,
                              const VocabIndex &index) {
  std::vector<int> ids;
  ids.reserve(tokens.size() + 1);
  for (const auto &tok : tokens) {
    auto it = index.ids.find(tok);
    ids.push_back(it == index.ids.end() ? index.oov_id : it->second);
  }
  ids.push_back(index.break_id);
  return ids;
}

LstmParams init_params(std::size_t vocab, std::size_t dim, std::size_t hidden,
                       std::mt19937_64 &gen) {
  LstmParams p;
  p.vocab = vocab;
  p.dim = dim;
  p.hidden = hidden;
  auto draw = [&gen](std::vector<double> &v, std::size_t n) {
    v.resize(n);
    for (auto &x : v) x = (uniform_unit(gen) * 2.0 - 1.0) * 0.08;
  };
  draw(p.E, vocab * dim);
  draw(p.Wx, 4 * hidden * dim);
  draw(p.Wh, 4 * hidden * hidden);
  p.b.assign(4 * hidden, 0.0);
  draw(p.Wy, vocab * hidden);
  p.by.assign(vocab, 0.0);
  return p;
}

namespace {

struct StepCache {
  int input = 0;
  int target = 0;
  Vec i, f, o, g, c, tanhc, h;
  Vec prob;
};

Vec sigmoid(const Vec &z) { return (1.0 + (-z.array()).exp()).inverse().matrix(); }

// Sum of cross-entropies over the sequence's predicted positions.  When grad
// is non-null the gradient of that sum is accumulated into it.
double sequence_pass(const LstmParams &p, const std::vector<int> &seq,
                     LstmParams *grad) {
  const auto H = static_cast<Eigen::Index>(p.hidden);
  const auto D = static_cast<Eigen::Index>(p.dim);
  const auto V = static_cast<Eigen::Index>(p.vocab);
  ConstMap E(p.E.data(), V, D);
  ConstMap Wx(p.Wx.data(), 4 * H, D);
  ConstMap Wh(p.Wh.data(), 4 * H, H);
  ConstMap Wy(p.Wy.data(), V, H);
  Eigen::Map<const Vec> b(p.b.data(), 4 * H);
  Eigen::Map<const Vec> by(p.by.data(), V);

  const std::size_t steps = seq.size() - 1;
  std::vector<StepCache> cache(steps);
  Vec h = Vec::Zero(H), c = Vec::Zero(H);
  double loss = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    StepCache &s = cache[t];
    s.input = seq[t];
    s.target = seq[t + 1];
    Vec z = Wx * E.row(s.input).transpose() + Wh * h + b;
    s.i = sigmoid(z.head(H));
    s.f = sigmoid(z.segment(H, H));
    s.o = sigmoid(z.segment(2 * H, H));
    s.g = z.tail(H).array().tanh().matrix();
    s.c = s.f.cwiseProduct(c) + s.i.cwiseProduct(s.g);
    s.tanhc = s.c.array().tanh().matrix();
    s.h = s.o.cwiseProduct(s.tanhc);
    Vec logits = Wy * s.h + by;
    const double m = logits.maxCoeff();
    Vec ex = (logits.array() - m).exp().matrix();
    const double z_sum = ex.sum();
    s.prob = ex / z_sum;
    loss += m + std::log(z_sum) - logits(s.target);
    h = s.h;
    c = s.c;
  }
  if (!grad) return loss;

  MutMap gE(grad->E.data(), V, D);
  MutMap gWx(grad->Wx.data(), 4 * H, D);
  MutMap gWh(grad->Wh.data(), 4 * H, H);
  MutMap gWy(grad->Wy.data(), V, H);
  Eigen::Map<Vec> gb(grad->b.data(), 4 * H);
  Eigen::Map<Vec> gby(grad->by.data(), V);

  Vec dh_next = Vec::Zero(H), dc_next = Vec::Zero(H);
  for (std::size_t ti = steps; ti-- > 0;) {
    const StepCache &s = cache[ti];
    const Vec &h_prev = ti == 0 ? Vec::Zero(H).eval() : cache[ti - 1].h;
    const Vec &c_prev = ti == 0 ? Vec::Zero(H).eval() : cache[ti - 1].c;

    Vec dlogits = s.prob;
    dlogits(s.target) -= 1.0;
    gWy.noalias() += dlogits * s.h.transpose();
    gby += dlogits;

    Vec dh = Wy.transpose() * dlogits + dh_next;
    Vec do_ = dh.cwiseProduct(s.tanhc);
    Vec dc = dc_next + dh.cwiseProduct(s.o).cwiseProduct(
                           (1.0 - s.tanhc.array().square()).matrix());
    Vec di = dc.cwiseProduct(s.g);
    Vec dg = dc.cwiseProduct(s.i);
    Vec df = dc.cwiseProduct(c_prev);
    dc_next = dc.cwiseProduct(s.f);

    Vec dz(4 * H);
    dz.head(H) = di.cwiseProduct(s.i).cwiseProduct((1.0 - s.i.array()).matrix());
    dz.segment(H, H) = df.cwiseProduct(s.f).cwiseProduct((1.0 - s.f.array()).matrix());
    dz.segment(2 * H, H) =
        do_.cwiseProduct(s.o).cwiseProduct((1.0 - s.o.array()).matrix());
    dz.tail(H) = dg.cwiseProduct((1.0 - s.g.array().square()).matrix());

    gWx.noalias() += dz * E.row(s.input);
    gWh.noalias() += dz * h_prev.transpose();
    gb += dz;
    gE.row(s.input) += (Wx.transpose() * dz).transpose();
    dh_next = Wh.transpose() * dz;
  }
  return loss;
}

LstmParams zero_like(const LstmParams &p) {
  LstmParams g;
  g.vocab = p.vocab;
  g.dim = p.dim;
  g.hidden = p.hidden;
  g.E.assign(p.E.size(), 0.0);
  g.Wx.assign(p.Wx.size(), 0.0);
  g.Wh.assign(p.Wh.size(), 0.0);
  g.b.assign(p.b.size(), 0.0);
  g.Wy.assign(p.Wy.size(), 0.0);
  g.by.assign(p.by.size(), 0.0);
  return g;
}

void check_sequence(const LstmParams &p, const std::vector<int> &seq) {
  for (int id : seq)
    if (id < 0 || static_cast<std::size_t>(id) >= p.vocab)
      throw make_error("DomainError",
                       "token id " + std::to_string(id) + " outside vocabulary of " +
                           std::to_string(p.vocab));
}

std::size_t predicted_positions(const std::vector<std::vector<int>> &sequences) {
  std::size_t total = 0;
  for (const auto &seq : sequences)
    if (seq.size() >= 2) total += seq.size() - 1;
  return total;
}

template <typename Fn>
void for_each_array(LstmParams &p, Fn fn) {
  fn(p.E);
  fn(p.Wx);
  fn(p.Wh);
  fn(p.b);
  fn(p.Wy);
  fn(p.by);
}

}  // namespace

double lm_loss(const LstmParams &p, const std::vector<std::vector<int>> &sequences) {
  const std::size_t total = predicted_positions(sequences);
  if (total == 0) throw make_error("EmptyInput", "no predicted positions in corpus");
  double sum = 0;
  for (const auto &seq : sequences) {
    if (seq.size() < 2) continue;
    check_sequence(p, seq);
    sum += sequence_pass(p, seq, nullptr);
  }
  return sum / static_cast<double>(total);
}

LstmParams lm_loss_gradient(const LstmParams &p,
                            const std::vector<std::vector<int>> &sequences) {
  const std::size_t total = predicted_positions(sequences);
  if (total == 0) throw make_error("EmptyInput", "no predicted positions in corpus");
  LstmParams grad = zero_like(p);
  for (const auto &seq : sequences) {
    if (seq.size() < 2) continue;
    check_sequence(p, seq);
    sequence_pass(p, seq, &grad);
  }
  const double scale = 1.0 / static_cast<double>(total);
  for_each_array(grad, [scale](std::vector<double> &v) {
    for (double &x : v) x *= scale;
  });
  return grad;
}

std::vector<double> next_token_distribution(const LstmParams &p,
                                            const std::vector<int> &prefix) {
  check_sequence(p, prefix);
  const auto H = static_cast<Eigen::Index>(p.hidden);
  const auto D = static_cast<Eigen::Index>(p.dim);
  const auto V = static_cast<Eigen::Index>(p.vocab);
  ConstMap E(p.E.data(), V, D);
  ConstMap Wx(p.Wx.data(), 4 * H, D);
  ConstMap Wh(p.Wh.data(), 4 * H, H);
  ConstMap Wy(p.Wy.data(), V, H);
  Eigen::Map<const Vec> b(p.b.data(), 4 * H);
  Eigen::Map<const Vec> by(p.by.data(), V);

  Vec h = Vec::Zero(H), c = Vec::Zero(H);
  const std::size_t steps = prefix.empty() ? 1 : prefix.size();
  for (std::size_t t = 0; t < steps; ++t) {
    Vec x = prefix.empty() ? Vec::Zero(D).eval() : E.row(prefix[t]).transpose().eval();
    Vec z = Wx * x + Wh * h + b;
    Vec i = sigmoid(z.head(H));
    Vec f = sigmoid(z.segment(H, H));
    Vec o = sigmoid(z.segment(2 * H, H));
    Vec g = z.tail(H).array().tanh().matrix();
    c = f.cwiseProduct(c) + i.cwiseProduct(g);
    h = o.cwiseProduct(c.array().tanh().matrix());
  }
  Vec logits = Wy * h + by;
  const double m = logits.maxCoeff();
  Vec ex = (logits.array() - m).exp().matrix();
  Vec prob = ex / ex.sum();
  return std::vector<double>(prob.data(), prob.data() + prob.size());
}

double quantize_value(double v) {
  return std::ldexp(static_cast<double>(std::llround(std::ldexp(v, 30))), -30);
}

Embedding train_embedding(const corpus::Dataset &data, const EmbeddingConfig &config) {
  validate_config(config);
  auto built = build_embedding_vocab(data, config);
  VocabIndex index = make_index(built.vocab);

  std::vector<std::vector<int>> sequences;
  sequences.reserve(data.records.size());
  for (const auto &record : data.records) {
    auto stream = textprep::preprocess(record.body);
    if (stream.tokens.empty()) continue;
    sequences.push_back(sequence_ids(stream.tokens, index));
  }
  if (predicted_positions(sequences) == 0)
    throw make_error("CorpusTooSmall", "no token sequences to train the model on");

  const std::size_t rows = built.vocab.terms.size();
  std::mt19937_64 gen(mix_seed(config.seed));
  LstmParams params = init_params(rows, config.embed_dim, config.hidden_dim, gen);

  Embedding out;
  out.config = config;
  out.vocab = built.vocab;
  out.vocab_truncated = built.truncated;
  out.rows = rows;
  out.cols = config.embed_dim;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    auto order = shuffled_indices(sequences.size(), gen);
    double total_ce = 0;
    std::size_t total_positions = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto &seq = sequences[order[k]];
      const double steps = static_cast<double>(seq.size() - 1);
      LstmParams grad = zero_like(params);
      const double sum_ce = sequence_pass(params, seq, &grad);
      if (!std::isfinite(sum_ce))
        throw make_error("NonFiniteLoss",
                         "loss diverged at epoch " + std::to_string(epoch) +
                             ", sequence " + std::to_string(order[k]));
      total_ce += sum_ce;
      total_positions += seq.size() - 1;

      double scale = 1.0 / steps;
      if (config.grad_clip > 0) {
        double norm_sq = 0;
        for_each_array(grad, [&norm_sq, scale](std::vector<double> &v) {
          for (double x : v) norm_sq += (x * scale) * (x * scale);
        });
        const double norm = std::sqrt(norm_sq);
        if (norm > config.grad_clip) scale *= config.grad_clip / norm;
      }
      const double step = config.learning_rate * scale;
      auto axpy = [step](std::vector<double> &dst, const std::vector<double> &src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= step * src[i];
      };
      axpy(params.E, grad.E);
      axpy(params.Wx, grad.Wx);
      axpy(params.Wh, grad.Wh);
      axpy(params.b, grad.b);
      axpy(params.Wy, grad.Wy);
      axpy(params.by, grad.by);
    }
    out.loss_per_epoch.push_back(total_ce / static_cast<double>(total_positions));
  }

  out.values.resize(params.E.size());
  for (std::size_t i = 0; i < params.E.size(); ++i)
    out.values[i] = quantize_value(params.E[i]);
  return out;
}

std::vector<double> project(const textprep::TokenStream &stream, const Embedding &emb,
                            const VocabIndex &index) {
  std::vector<double> out(emb.cols, 0.0);
  for (const auto &tok : stream.tokens) {
    auto it = index.ids.find(tok);
    const std::size_t row =
        static_cast<std::size_t>(it == index.ids.end() ? index.oov_id : it->second);
    const double *src = emb.values.data() + row * emb.cols;
    for (std::size_t d = 0; d < emb.cols; ++d) out[d] += src[d];
  }
  return out;
}

std::vector<double> project(const textprep::TokenStream &stream, const Embedding &emb) {
  return project(stream, emb, make_index(emb.vocab));
}

std::vector<double> project(const corpus::TweetRecord &record, const Embedding &emb) {
  return project(textprep::preprocess(record.body), emb);
}

nlohmann::json embedding_to_json(const Embedding &emb) {
  nlohmann::json j;
  j["version"] = 1;
  j["config"] = {{"vocab_size", emb.config.vocab_size},
                 {"embed_dim", emb.config.embed_dim},
                 {"hidden_dim", emb.config.hidden_dim},
                 {"epochs", emb.config.epochs},
                 {"learning_rate", emb.config.learning_rate},
                 {"grad_clip", emb.config.grad_clip},
                 {"max_doc_fraction", emb.config.max_doc_fraction},
                 {"seed", emb.config.seed}};
  j["vocab_terms"] = emb.vocab.terms;
  j["vocab_truncated"] = emb.vocab_truncated;
  j["rows"] = emb.rows;
  j["cols"] = emb.cols;
  // Entries are multiples of 2^-30, so scaled integers serialize them without
  // any precision loss.
  j["scale_bits"] = 30;
  std::vector<std::int64_t> scaled(emb.values.size());
  for (std::size_t i = 0; i < emb.values.size(); ++i)
    scaled[i] = std::llround(std::ldexp(emb.values[i], 30));
  j["values"] = scaled;
  j["loss_per_epoch"] = emb.loss_per_epoch;
  return j;
}

Embedding embedding_from_json(const nlohmann::json &j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw make_error("SchemaError", "unsupported embedding file version");
  Embedding emb;
  const auto &c = j.at("config");
  emb.config.vocab_size = c.at("vocab_size").get<std::size_t>();
  emb.config.embed_dim = c.at("embed_dim").get<std::size_t>();
  emb.config.hidden_dim = c.at("hidden_dim").get<std::size_t>();
  emb.config.epochs = c.at("epochs").get<std::size_t>();
  emb.config.learning_rate = c.at("learning_rate").get<double>();
  emb.config.grad_clip = c.at("grad_clip").get<double>();
  emb.config.max_doc_fraction = c.at("max_doc_fraction").get<double>();
  emb.config.seed = c.at("seed").get<std::uint64_t>();
  emb.vocab.kind = features::VocabularyKind::EmbeddingTopK;
  emb.vocab.terms = j.at("vocab_terms").get<std::vector<std::string>>();
  emb.vocab_truncated = j.at("vocab_truncated").get<bool>();
  emb.rows = j.at("rows").get<std::size_t>();
  emb.cols = j.at("cols").get<std::size_t>();
  const int bits = j.at("scale_bits").get<int>();
  auto scaled = j.at("values").get<std::vector<std::int64_t>>();
  if (emb.rows != emb.vocab.terms.size() || emb.rows * emb.cols != scaled.size())
    throw make_error("SchemaError", "embedding matrix shape does not match vocabulary");
  emb.values.resize(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    emb.values[i] = std::ldexp(static_cast<double>(scaled[i]), -bits);
  emb.loss_per_epoch = j.at("loss_per_epoch").get<std::vector<double>>();
  make_index(emb.vocab);  // enforces the reserved slots
  return emb;
}

void save_embedding(const Embedding &emb, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw make_error("IoError", "cannot open " + path + " for writing");
  out << embedding_to_json(emb).dump(2, ' ', false,
                                     nlohmann::json::error_handler_t::replace)
      << '\n';
  if (!out) throw make_error("IoError", "failed writing " + path);
}

Embedding load_embedding(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw make_error("IoError", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw make_error("SchemaError", std::string("invalid embedding file: ") + e.what());
  }
  return embedding_from_json(j);
}

}  // namespace cashtag::embedding
