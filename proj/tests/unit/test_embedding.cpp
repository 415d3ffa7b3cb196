#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cashtag/corpus.hpp"
#include "cashtag/embedding.hpp"
#include "cashtag/error.hpp"
#include "cashtag/rng.hpp"
#include "cashtag/textprep.hpp"

using namespace cashtag;
using namespace cashtag::embedding;

namespace {

corpus::TweetRecord tweet(const std::string &id, const std::string &body) {
  corpus::TweetRecord r;
  r.id = id;
  r.body = body;
  r.created_at = 1520000000;
  r.user.account_created_at = 1400000000;
  r.cashtags = textprep::extract_cashtags(body);
  r.hashtags = textprep::extract_hashtags(body);
  return r;
}

corpus::Dataset dataset(const std::vector<std::string> &bodies) {
  corpus::Dataset ds;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    ds.records.push_back(tweet("t" + std::to_string(i), bodies[i]));
  return ds;
}

}  // namespace

TEST_CASE("vocabulary keeps frequent stems, drops tickers and ubiquitous words") {
  // alpha appears in all four tweets (dropped by the document-share cap),
  // beta in exactly half (kept: the cap is strict), nxt shadows a cashtag.
  corpus::Dataset ds = dataset({
      "alpha beta gamma",
      "alpha beta",
      "alpha delta $NXT nxt",
      "alpha",
  });
  EmbeddingConfig cfg;
  cfg.vocab_size = 5;
  cfg.embed_dim = 2;
  VocabBuildResult res = build_embedding_vocab(ds, cfg);
  std::vector<std::string> expected = {"beta", "delta", "gamma", "<oov>", "<eol>"};
  CHECK(res.vocab.terms == expected);
  CHECK(res.truncated == false);

  cfg.vocab_size = 6;  // four content slots but only three eligible stems
  VocabBuildResult wide = build_embedding_vocab(ds, cfg);
  CHECK(wide.truncated == true);
  CHECK(wide.vocab.terms.size() == 5);
}

TEST_CASE("frequency ties break toward the lexicographically smaller stem") {
  corpus::Dataset ds = dataset({"zebra", "yak", "zebra yak", "quill"});
  EmbeddingConfig cfg;
  cfg.vocab_size = 4;  // two content slots; zebra and yak tie at two uses
  cfg.embed_dim = 2;
  VocabBuildResult res = build_embedding_vocab(ds, cfg);
  std::vector<std::string> expected = {"yak", "zebra", "<oov>", "<eol>"};
  CHECK(res.vocab.terms == expected);
}

TEST_CASE("config validation") {
  corpus::Dataset ds = dataset({"alpha"});
  EmbeddingConfig cfg;
  cfg.vocab_size = 1;
  CHECK_THROWS_AS(build_embedding_vocab(ds, cfg), Error);
  cfg.vocab_size = 10;
  cfg.embed_dim = 0;
  CHECK_THROWS_AS(build_embedding_vocab(ds, cfg), Error);
  cfg.embed_dim = 4;
  cfg.max_doc_fraction = 0.0;
  CHECK_THROWS_AS(build_embedding_vocab(ds, cfg), Error);
  cfg.max_doc_fraction = 0.5;
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(build_embedding_vocab(ds, cfg), Error);
}

TEST_CASE("index and sequence ids") {
  features::Vocabulary vocab;
  vocab.kind = features::VocabularyKind::EmbeddingTopK;
  vocab.terms = {"beta", "delta", "gamma", "<oov>", "<eol>"};
  VocabIndex index = make_index(vocab);
  CHECK(index.oov_id == 3);
  CHECK(index.break_id == 4);
  CHECK(index.ids.at("beta") == 0);
  CHECK(index.ids.count("<oov>") == 0);

  std::vector<int> ids = sequence_ids({"beta", "zzz", "gamma"}, index);
  std::vector<int> expected = {0, 3, 2, 4};
  CHECK(ids == expected);
}

TEST_CASE("parameter initialization is bounded and deterministic") {
  std::mt19937_64 gen(42);
  LstmParams p = init_params(6, 3, 4, gen);
  CHECK(p.E.size() == 6 * 3);
  CHECK(p.Wx.size() == 4 * 4 * 3);
  CHECK(p.Wh.size() == 4 * 4 * 4);
  CHECK(p.b.size() == 4 * 4);
  CHECK(p.Wy.size() == 6 * 4);
  CHECK(p.by.size() == 6);
  for (const auto *block : {&p.E, &p.Wx, &p.Wh, &p.Wy})
    for (double v : *block) CHECK(std::fabs(v) <= 0.08);
  for (double v : p.b) CHECK(v == 0.0);
  for (double v : p.by) CHECK(v == 0.0);

  std::mt19937_64 gen2(42);
  LstmParams q = init_params(6, 3, 4, gen2);
  CHECK(p.E == q.E);
  CHECK(p.Wx == q.Wx);
  CHECK(p.Wh == q.Wh);
  CHECK(p.Wy == q.Wy);
}

TEST_CASE("zero parameters give the uniform language model") {
  LstmParams p;
  p.vocab = 5;
  p.dim = 2;
  p.hidden = 3;
  p.E.assign(p.vocab * p.dim, 0.0);
  p.Wx.assign(4 * p.hidden * p.dim, 0.0);
  p.Wh.assign(4 * p.hidden * p.hidden, 0.0);
  p.b.assign(4 * p.hidden, 0.0);
  p.Wy.assign(p.vocab * p.hidden, 0.0);
  p.by.assign(p.vocab, 0.0);

  std::vector<std::vector<int>> seqs = {{0, 1, 2, 4}, {3, 4}};
  CHECK(lm_loss(p, seqs) == doctest::Approx(std::log(5.0)).epsilon(1e-12));

  std::vector<double> dist = next_token_distribution(p, {0, 1});
  REQUIRE(dist.size() == 5);
  double total = 0;
  for (double v : dist) {
    CHECK(v == doctest::Approx(0.2).epsilon(1e-12));
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("language model loss needs at least one predicted position") {
  LstmParams p;
  p.vocab = 3;
  p.dim = 1;
  p.hidden = 2;
  p.E.assign(3, 0.0);
  p.Wx.assign(8, 0.0);
  p.Wh.assign(16, 0.0);
  p.b.assign(8, 0.0);
  p.Wy.assign(6, 0.0);
  p.by.assign(3, 0.0);
  std::vector<std::vector<int>> only_singletons = {{1}, {2}, {}};
  CHECK_THROWS_AS(lm_loss(p, only_singletons), Error);
}

TEST_CASE("backpropagation matches central differences") {
  std::mt19937_64 gen(7);
  LstmParams p = init_params(6, 3, 4, gen);
  // Push weights away from the tiny init so gates are not all near 0.5.
  for (auto *block : {&p.E, &p.Wx, &p.Wh, &p.b, &p.Wy, &p.by})
    for (auto &v : *block) v = v * 4 + (uniform_unit(gen) - 0.5) * 0.4;

  std::vector<std::vector<int>> seqs = {{0, 2, 1, 5}, {3, 4, 5}, {1, 1, 0, 2, 5}};
  LstmParams grad = lm_loss_gradient(p, seqs);

  const double h = 1e-5;
  double worst = 0;
  auto sweep = [&](std::vector<double> &block, const std::vector<double> &gblock) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      const double keep = block[i];
      block[i] = keep + h;
      const double up = lm_loss(p, seqs);
      block[i] = keep - h;
      const double down = lm_loss(p, seqs);
      block[i] = keep;
      const double numeric = (up - down) / (2 * h);
      const double denom =
          std::max({std::fabs(gblock[i]), std::fabs(numeric), 1e-4});
      worst = std::max(worst, std::fabs(gblock[i] - numeric) / denom);
    }
  };
  sweep(p.E, grad.E);
  sweep(p.Wx, grad.Wx);
  sweep(p.Wh, grad.Wh);
  sweep(p.b, grad.b);
  sweep(p.Wy, grad.Wy);
  sweep(p.by, grad.by);
  CHECK(worst < 1e-4);
}

TEST_CASE("training learns a deterministic alternating corpus") {
  std::vector<std::string> bodies(30, "order chaos order chaos order chaos");
  corpus::Dataset ds = dataset(bodies);
  EmbeddingConfig cfg;
  cfg.vocab_size = 4;
  cfg.embed_dim = 4;
  cfg.hidden_dim = 8;
  cfg.epochs = 15;
  cfg.learning_rate = 0.3;
  cfg.max_doc_fraction = 1.0;  // the two stems appear in every tweet
  cfg.seed = 11;
  Embedding emb = train_embedding(ds, cfg);
  CHECK(emb.rows == 4);
  CHECK(emb.cols == 4);
  CHECK(emb.values.size() == 16);
  REQUIRE(emb.loss_per_epoch.size() == 15);
  CHECK(emb.loss_per_epoch.back() < emb.loss_per_epoch.front());
  // A strictly alternating stream is nearly predictable; far below the
  // uniform baseline ln(4) = 1.386.
  CHECK(emb.loss_per_epoch.back() < 1.0);

  Embedding again = train_embedding(ds, cfg);
  CHECK(again.values == emb.values);
  CHECK(again.loss_per_epoch == emb.loss_per_epoch);
}

TEST_CASE("training refuses an empty corpus") {
  corpus::Dataset empty;
  EmbeddingConfig cfg;
  cfg.vocab_size = 4;
  cfg.embed_dim = 2;
  cfg.hidden_dim = 2;
  CHECK_THROWS_AS(train_embedding(empty, cfg), Error);
}

TEST_CASE("stored embedding values sit on the dyadic grid") {
  const double step = std::ldexp(1.0, -30);
  CHECK(quantize_value(0.0) == 0.0);
  CHECK(quantize_value(step * 7) == step * 7);
  CHECK(quantize_value(-step * 3) == -step * 3);
  const double q = quantize_value(0.3);
  CHECK(std::fabs(q - 0.3) <= step / 2);
  CHECK(q * std::ldexp(1.0, 30) == std::round(q * std::ldexp(1.0, 30)));

  corpus::Dataset ds =
      dataset(std::vector<std::string>(10, "maple river stone maple river"));
  EmbeddingConfig cfg;
  cfg.vocab_size = 5;
  cfg.embed_dim = 3;
  cfg.hidden_dim = 4;
  cfg.epochs = 2;
  cfg.max_doc_fraction = 1.0;
  Embedding emb = train_embedding(ds, cfg);
  for (double v : emb.values) {
    const double scaled = v * std::ldexp(1.0, 30);
    CHECK(scaled == std::round(scaled));
  }
}

TEST_CASE("projection is exactly additive over concatenation") {
  corpus::Dataset ds =
      dataset(std::vector<std::string>(12, "maple river stone cloud maple"));
  EmbeddingConfig cfg;
  cfg.vocab_size = 6;
  cfg.embed_dim = 4;
  cfg.hidden_dim = 4;
  cfg.epochs = 2;
  cfg.max_doc_fraction = 1.0;
  Embedding emb = train_embedding(ds, cfg);

  textprep::TokenStream a;
  a.tokens = {"maple", "river", "unknownword"};
  textprep::TokenStream b;
  b.tokens = {"stone", "maple", "cloud", "cloud"};
  textprep::TokenStream ab;
  ab.tokens = a.tokens;
  ab.tokens.insert(ab.tokens.end(), b.tokens.begin(), b.tokens.end());

  std::vector<double> pa = project(a, emb);
  std::vector<double> pb = project(b, emb);
  std::vector<double> pab = project(ab, emb);
  REQUIRE(pa.size() == 4);
  REQUIRE(pab.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(pa[k] + pb[k] == pab[k]);

  // Projecting a record uses its preprocessed body tokens.
  corpus::TweetRecord rec = tweet("p1", "maple river stone");
  std::vector<double> via_record = project(rec, emb);
  std::vector<double> via_stream = project(textprep::preprocess(rec.body), emb);
  CHECK(via_record == via_stream);
}

TEST_CASE("embedding artifacts round trip bit for bit") {
  corpus::Dataset ds =
      dataset(std::vector<std::string>(8, "amber birch cedar amber birch"));
  EmbeddingConfig cfg;
  cfg.vocab_size = 5;
  cfg.embed_dim = 3;
  cfg.hidden_dim = 4;
  cfg.epochs = 3;
  cfg.max_doc_fraction = 1.0;
  cfg.seed = 9;
  Embedding emb = train_embedding(ds, cfg);

  Embedding back = embedding_from_json(embedding_to_json(emb));
  CHECK(back.values == emb.values);
  CHECK(back.vocab.terms == emb.vocab.terms);
  CHECK(back.rows == emb.rows);
  CHECK(back.cols == emb.cols);
  CHECK(back.loss_per_epoch == emb.loss_per_epoch);
  CHECK(back.config.seed == emb.config.seed);

  const std::string path = "/tmp/cashtag_test_embedding_rt.json";
  save_embedding(emb, path);
  Embedding loaded = load_embedding(path);
  CHECK(loaded.values == emb.values);
  CHECK(loaded.vocab.terms == emb.vocab.terms);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_embedding("/tmp/cashtag_no_such_embedding.json"), Error);

  nlohmann::json bad = embedding_to_json(emb);
  bad["vocab_terms"] = nlohmann::json::array({"a", "b"});  // reserved slots missing
  CHECK_THROWS_AS(embedding_from_json(bad), Error);
}
