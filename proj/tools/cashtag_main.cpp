// Batch front end: every subcommand reads files, writes artifacts under
// --out, and drops a manifest.json recording the invocation, seeds, and
// content fingerprints so any run can be replayed and compared byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/error.hpp"
#include "cashtag/eval.hpp"
#include "cashtag/features.hpp"
#include "cashtag/heuristics.hpp"
#include "cashtag/manifest.hpp"
#include "cashtag/models.hpp"
#include "cashtag/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cashtag;

namespace {

std::string g_command;
std::vector<std::string> g_argv;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_path(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string &out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw make_error("IoError", "cannot create output directory " + out);
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw make_error("IoError", "cannot open " + path + " for writing");
  f << text;
  if (!f) throw make_error("IoError", "failed writing " + path);
}

// One manifest per command, written last so every output named in it exists
// and can be fingerprinted.
void emit_manifest(const std::string &out, const json &seeds,
                   const std::vector<std::string> &inputs,
                   const std::vector<std::string> &outputs) {
  manifest::RunManifest m;
  m.command = g_command;
  m.argv = g_argv;
  m.timestamp = manifest::now_timestamp();
  m.seeds = seeds;
  for (const auto &p : inputs)
    m.inputs.push_back({p, manifest::fingerprint_file(p)});
  for (const auto &p : outputs)
    m.outputs.push_back({p, manifest::fingerprint_file(p)});
  manifest::write_manifest(m, join_path(out, "manifest.json"));
}

struct PredictionRow {
  std::string id;
  corpus::ClassLabel label = corpus::ClassLabel::Cryptocurrency;
  double score = 0;
};

void write_predictions(const std::string &path,
                       const std::vector<PredictionRow> &rows) {
  std::string text = "id,label,score\n";
  for (const auto &r : rows)
    text += r.id + "," + corpus::to_string(r.label) + "," + format_double(r.score) +
            "\n";
  write_text(path, text);
}

std::vector<PredictionRow> read_predictions(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw make_error("IoError", "cannot open predictions file " + path);
  std::string line;
  if (!std::getline(f, line))
    throw make_error("SchemaError", path + ": empty predictions file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,label,score")
    throw make_error("SchemaError", path + ": expected header id,label,score");
  std::vector<PredictionRow> rows;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.rfind(',');
    if (c1 == std::string::npos || c2 == c1)
      throw make_error("SchemaError", path + " line " + std::to_string(line_no) +
                                          ": expected 3 comma-separated fields");
    PredictionRow r;
    r.id = line.substr(0, c1);
    r.label = corpus::label_from_string(line.substr(c1 + 1, c2 - c1 - 1));
    try {
      r.score = std::stod(line.substr(c2 + 1));
    } catch (const std::exception &) {
      throw make_error("SchemaError", path + " line " + std::to_string(line_no) +
                                          ": bad score field");
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty())
    throw make_error("SchemaError", path + ": no prediction rows");
  return rows;
}

std::map<std::string, corpus::ClassLabel> gold_by_id(const corpus::Dataset &data) {
  std::map<std::string, corpus::ClassLabel> gold;
  for (const auto &r : data.records) {
    if (!r.label)
      throw make_error("UnlabeledRecord", "record " + r.id + " carries no label");
    if (!gold.emplace(r.id, *r.label).second)
      throw make_error("SchemaError", "duplicate record id " + r.id);
  }
  return gold;
}

// ---- generate ----------------------------------------------------------

struct GenerateArgs {
  std::string out;
  std::string config;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool n_set = false, seed_set = false;
};

void run_generate(const GenerateArgs &a) {
  synthgen::GeneratorSpec spec =
      a.config.empty() ? synthgen::default_spec() : synthgen::load_spec(a.config);
  if (a.n_set) spec.n_records = a.n;
  if (a.seed_set) spec.seed = a.seed;
  corpus::Dataset data = synthgen::generate(spec);
  ensure_out_dir(a.out);
  const std::string corpus_path = join_path(a.out, "corpus.jsonl");
  corpus::save_dataset(data, corpus_path);
  std::vector<std::string> inputs;
  if (!a.config.empty()) inputs.push_back(a.config);
  emit_manifest(a.out, json{{"generate", spec.seed}}, inputs, {corpus_path});
  std::cout << "wrote " << corpus_path << " (" << data.records.size()
            << " records)\n";
}

// ---- ingest ------------------------------------------------------------

struct IngestArgs {
  std::string out;
  std::string input;
  bool lenient = false;
};

void run_ingest(const IngestArgs &a) {
  std::vector<std::string> skipped;
  corpus::Dataset data =
      corpus::load_dataset(a.input, a.lenient, a.lenient ? &skipped : nullptr);
  ensure_out_dir(a.out);
  const std::string corpus_path = join_path(a.out, "corpus.jsonl");
  corpus::save_dataset(data, corpus_path);
  emit_manifest(a.out, json::object(), {a.input}, {corpus_path});
  std::cout << "wrote " << corpus_path << " (" << data.records.size()
            << " records";
  if (a.lenient) std::cout << ", " << skipped.size() << " lines skipped";
  std::cout << ")\n";
  for (const auto &s : skipped) std::cerr << "skipped " << s << "\n";
}

// ---- split -------------------------------------------------------------

struct SplitArgs {
  std::string out;
  std::string input;
  corpus::SplitSpec spec;
};

void run_split(const SplitArgs &a) {
  corpus::Dataset data = corpus::load_dataset(a.input);
  corpus::SplitResult parts = corpus::split(data, a.spec);
  ensure_out_dir(a.out);
  const std::string train_path = join_path(a.out, "train.jsonl");
  const std::string tune_path = join_path(a.out, "tune.jsonl");
  const std::string test_path = join_path(a.out, "test.jsonl");
  corpus::save_dataset(parts.train, train_path);
  corpus::save_dataset(parts.tune, tune_path);
  corpus::save_dataset(parts.test, test_path);
  emit_manifest(a.out, json{{"split", a.spec.seed}}, {a.input},
                {train_path, tune_path, test_path});
  std::cout << "wrote " << train_path << " (" << parts.train.records.size()
            << "), " << tune_path << " (" << parts.tune.records.size() << "), "
            << test_path << " (" << parts.test.records.size() << ")\n";
}

// ---- explore -----------------------------------------------------------

struct ExploreArgs {
  std::string out;
  std::string input;
};

void run_explore(const ExploreArgs &a) {
  corpus::Dataset data = corpus::load_dataset(a.input);
  ensure_out_dir(a.out);
  const std::string report_path = join_path(a.out, "explore.csv");
  write_text(report_path, features::explore_report_csv(data));
  emit_manifest(a.out, json::object(), {a.input}, {report_path});
  std::cout << "wrote " << report_path << "\n";
}

// ---- filter ------------------------------------------------------------

struct FilterArgs {
  std::string out;
  std::string input;
  std::string mode = "extended";
  std::string config;
};

void run_filter(const FilterArgs &a) {
  if (a.mode != "simple" && a.mode != "extended")
    throw make_error("InvalidSpec", "filter mode must be simple or extended");
  corpus::Dataset data = corpus::load_dataset(a.input);
  const heuristics::HeuristicConfig config =
      a.config.empty() ? heuristics::default_config()
                       : heuristics::load_config(a.config);
  std::vector<PredictionRow> rows;
  rows.reserve(data.records.size());
  for (const auto &rec : data.records) {
    corpus::ClassLabel label =
        a.mode == "simple" ? heuristics::simple_filter(rec, config)
                           : heuristics::extended_filter(rec, config).label;
    // Scores increase toward Company so the rows feed evaluate unchanged.
    rows.push_back({rec.id, label, label == corpus::ClassLabel::Company ? 1.0 : 0.0});
  }
  ensure_out_dir(a.out);
  const std::string pred_path = join_path(a.out, "predictions.csv");
  write_predictions(pred_path, rows);
  std::vector<std::string> inputs = {a.input};
  if (!a.config.empty()) inputs.push_back(a.config);
  emit_manifest(a.out, json::object(), inputs, {pred_path});
  std::cout << "wrote " << pred_path << " (" << rows.size() << " rows)\n";
}

// ---- train -------------------------------------------------------------

struct TrainArgs {
  std::string out;
  std::string train_path;
  std::string tune_path;
  std::string variant = "combined";
  std::string kind;
  std::string config;
  std::string embedding_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void apply_train_section(const json &j, models::TrainConfig &c) {
  for (const auto &[key, value] : j.items()) {
    if (key == "lambdas") c.lambdas = value.get<std::vector<double>>();
    else if (key == "learning_rates") c.learning_rates = value.get<std::vector<double>>();
    else if (key == "max_epochs") c.max_epochs = value.get<std::size_t>();
    else if (key == "patience") c.patience = value.get<std::size_t>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "class_weighting") c.class_weighting = value.get<bool>();
    else if (key == "full_batch") c.full_batch = value.get<bool>();
    else throw make_error("InvalidSpec", "unknown train config key \"train." + key + "\"");
  }
}

void apply_embedding_section(const json &j, embedding::EmbeddingConfig &c) {
  for (const auto &[key, value] : j.items()) {
    if (key == "vocab_size") c.vocab_size = value.get<std::size_t>();
    else if (key == "embed_dim") c.embed_dim = value.get<std::size_t>();
    else if (key == "hidden_dim") c.hidden_dim = value.get<std::size_t>();
    else if (key == "epochs") c.epochs = value.get<std::size_t>();
    else if (key == "learning_rate") c.learning_rate = value.get<double>();
    else if (key == "grad_clip") c.grad_clip = value.get<double>();
    else if (key == "max_doc_fraction") c.max_doc_fraction = value.get<double>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else throw make_error("InvalidSpec", "unknown train config key \"embedding." + key + "\"");
  }
}

void run_train(const TrainArgs &a) {
  const features::Variant variant = features::variant_from_string(a.variant);
  models::PipelineTrainOptions options;
  options.kind = models::ModelKind::MarginClassifier;

  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw make_error("IoError", "cannot open train config " + a.config);
    json root;
    try {
      root = json::parse(f);
    } catch (const json::parse_error &e) {
      throw make_error("InvalidSpec", std::string("train config: ") + e.what());
    }
    if (!root.is_object())
      throw make_error("InvalidSpec", "train config: top level must be an object");
    for (const auto &[key, value] : root.items()) {
      if (key == "kind") options.kind = models::kind_from_string(value.get<std::string>());
      else if (key == "train") apply_train_section(value, options.train);
      else if (key == "embedding") apply_embedding_section(value, options.embedding);
      else if (key == "heuristic")
        options.heuristic = value.is_string()
                                ? heuristics::load_config(value.get<std::string>())
                                : heuristics::config_from_json(value);
      else if (key == "homonym_tickers")
        options.homonym_tickers = value.get<std::vector<std::string>>();
      else throw make_error("InvalidSpec", "unknown train config key \"" + key + "\"");
    }
  }
  if (!a.kind.empty()) options.kind = models::kind_from_string(a.kind);
  if (a.seed_set) {
    options.train.seed = a.seed;
    options.embedding.seed = a.seed;
  }

  corpus::Dataset train_set = corpus::load_dataset(a.train_path);
  corpus::Dataset tune_set;
  if (!a.tune_path.empty()) tune_set = corpus::load_dataset(a.tune_path);
  if (!a.embedding_path.empty())
    options.pretrained = embedding::load_embedding(a.embedding_path);

  models::Pipeline pipeline = models::train_pipeline(variant, train_set, tune_set, options);

  ensure_out_dir(a.out);
  const std::string model_path = join_path(a.out, "model.json");
  const std::string embed_path = join_path(a.out, "embedding.json");
  models::save_pipeline(pipeline, model_path, embed_path);

  std::vector<std::string> inputs = {a.train_path};
  if (!a.tune_path.empty()) inputs.push_back(a.tune_path);
  if (!a.config.empty()) inputs.push_back(a.config);
  if (!a.embedding_path.empty()) inputs.push_back(a.embedding_path);
  std::vector<std::string> outputs = {model_path};
  json seeds{{"train", options.train.seed}};
  if (pipeline.schema.embedding_dim > 0) {
    outputs.push_back(embed_path);
    if (a.embedding_path.empty()) seeds["embedding"] = options.embedding.seed;
  }
  emit_manifest(a.out, seeds, inputs, outputs);

  std::cout << "trained " << features::to_string(pipeline.model.variant) << " ("
            << models::to_string(pipeline.model.kind) << "), lambda "
            << pipeline.model.lambda << ", lr " << pipeline.model.learning_rate
            << ", epochs " << pipeline.model.epochs_run;
  if (pipeline.model.selection_f)
    std::cout << ", selection F " << *pipeline.model.selection_f;
  std::cout << "\nwrote " << model_path << "\n";
}

// ---- classify ----------------------------------------------------------

struct ClassifyArgs {
  std::string out;
  std::string input;
  std::string model;
};

void run_classify(const ClassifyArgs &a) {
  models::Pipeline pipeline = models::load_pipeline(a.model);
  corpus::Dataset data = corpus::load_dataset(a.input);
  std::vector<PredictionRow> rows;
  rows.reserve(data.records.size());
  for (const auto &rec : data.records) {
    models::Decision d = pipeline.classify(rec);
    rows.push_back({rec.id, d.label, d.score});
  }
  ensure_out_dir(a.out);
  const std::string pred_path = join_path(a.out, "predictions.csv");
  write_predictions(pred_path, rows);
  emit_manifest(a.out, json::object(), {a.input, a.model}, {pred_path});
  std::cout << "wrote " << pred_path << " (" << rows.size() << " rows)\n";
}

// ---- evaluate ----------------------------------------------------------

struct EvaluateArgs {
  std::string out;
  std::string input;
  std::string predictions;
};

std::string na_or(const std::optional<double> &v) {
  return v ? format_double(*v) : "NA";
}

void run_evaluate(const EvaluateArgs &a) {
  corpus::Dataset data = corpus::load_dataset(a.input);
  const auto gold_map = gold_by_id(data);
  std::vector<PredictionRow> rows = read_predictions(a.predictions);

  std::vector<corpus::ClassLabel> predicted, gold;
  std::vector<double> scores;
  std::set<std::string> seen;
  for (const auto &r : rows) {
    auto it = gold_map.find(r.id);
    if (it == gold_map.end())
      throw make_error("SchemaError", "prediction id " + r.id +
                                          " is not in the gold dataset");
    if (!seen.insert(r.id).second)
      throw make_error("SchemaError", "duplicate prediction id " + r.id);
    predicted.push_back(r.label);
    gold.push_back(it->second);
    scores.push_back(r.score);
  }

  eval::EvalReport report = eval::metrics(eval::confusion(predicted, gold));
  report.model_id = fs::path(a.predictions).filename().string();
  report.dataset_fingerprint = manifest::fingerprint_file(a.input);

  std::vector<eval::RocPoint> roc;
  try {
    report.auc = eval::auc(scores, gold);
    roc = eval::roc_points(scores, gold);
  } catch (const Error &e) {
    if (e.code() != "SingleClassInput") throw;
  }

  std::string csv = "metric,value\n";
  csv += "tp," + std::to_string(report.counts.tp) + "\n";
  csv += "fp," + std::to_string(report.counts.fp) + "\n";
  csv += "tn," + std::to_string(report.counts.tn) + "\n";
  csv += "fn," + std::to_string(report.counts.fn) + "\n";
  csv += "precision," + na_or(report.precision) + "\n";
  csv += "recall," + na_or(report.recall) + "\n";
  csv += "specificity," + na_or(report.specificity) + "\n";
  csv += "accuracy," + na_or(report.accuracy) + "\n";
  csv += "f_score," + na_or(report.f_score) + "\n";
  csv += "auc," + na_or(report.auc) + "\n";

  std::string roc_csv = "threshold,fpr,tpr\n";
  for (const auto &p : roc)
    roc_csv += format_double(p.threshold) + "," + format_double(p.fpr) + "," +
               format_double(p.tpr) + "\n";

  auto pct = [](const std::optional<double> &v) {
    if (!v) return std::string("NA");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  std::string txt;
  txt += "predictions: " + report.model_id + "\n";
  txt += "records:     " + std::to_string(report.counts.total()) + "\n";
  txt += "confusion (Company positive):\n";
  txt += "  tp " + std::to_string(report.counts.tp) + "  fn " +
         std::to_string(report.counts.fn) + "\n";
  txt += "  fp " + std::to_string(report.counts.fp) + "  tn " +
         std::to_string(report.counts.tn) + "\n";
  txt += "precision   " + pct(report.precision) + "\n";
  txt += "recall      " + pct(report.recall) + "\n";
  txt += "specificity " + pct(report.specificity) + "\n";
  txt += "accuracy    " + pct(report.accuracy) + "\n";
  txt += "f-score     " + pct(report.f_score) + "\n";
  txt += "auc         " + pct(report.auc) + "\n";

  ensure_out_dir(a.out);
  const std::string report_path = join_path(a.out, "report.csv");
  const std::string roc_path = join_path(a.out, "roc.csv");
  const std::string txt_path = join_path(a.out, "report.txt");
  write_text(report_path, csv);
  write_text(roc_path, roc_csv);
  write_text(txt_path, txt);
  emit_manifest(a.out, json::object(), {a.input, a.predictions},
                {report_path, roc_path, txt_path});
  std::cout << txt;
}

// ---- compare -----------------------------------------------------------

struct CompareArgs {
  std::string out;
  std::string input;
  std::vector<std::string> predictions;
  std::size_t subset_size = 0;
  std::uint64_t seed = 0;
};

json test_result_json(const eval::TestResult &t) {
  return json{{"statistic", t.statistic}, {"p_value", t.p_value}, {"dof", t.dof}};
}

json outcome_json(const eval::SubsetOutcome &o) {
  json j;
  j["averaged"] = o.averaged ? test_result_json(*o.averaged) : json(nullptr);
  j["per_subset"] = o.per_subset;
  j["per_subset_p"] = o.per_subset_p;
  j["skipped_subsets"] = o.skipped;
  return j;
}

void run_compare(const CompareArgs &a) {
  if (a.predictions.size() < 2)
    throw make_error("InvalidSpec", "compare needs at least two prediction files");
  corpus::Dataset data = corpus::load_dataset(a.input);
  const auto gold_map = gold_by_id(data);

  // Objects follow the first file's row order; every file must cover the
  // same ids so the correctness indicators line up.
  std::vector<std::vector<PredictionRow>> files;
  for (const auto &p : a.predictions) files.push_back(read_predictions(p));
  std::vector<corpus::ClassLabel> gold;
  std::map<std::string, std::size_t> position;
  for (const auto &r : files[0]) {
    auto it = gold_map.find(r.id);
    if (it == gold_map.end())
      throw make_error("SchemaError", "prediction id " + r.id +
                                          " is not in the gold dataset");
    if (!position.emplace(r.id, position.size()).second)
      throw make_error("SchemaError", "duplicate prediction id " + r.id);
    gold.push_back(it->second);
  }
  std::vector<std::vector<corpus::ClassLabel>> predictions(
      files.size(), std::vector<corpus::ClassLabel>(gold.size(),
                                                    corpus::ClassLabel::Company));
  for (std::size_t m = 0; m < files.size(); ++m) {
    if (files[m].size() != gold.size())
      throw make_error("SchemaError", a.predictions[m] +
                                          ": row count differs from " +
                                          a.predictions[0]);
    std::set<std::string> seen;
    for (const auto &r : files[m]) {
      auto it = position.find(r.id);
      if (it == position.end())
        throw make_error("SchemaError", a.predictions[m] + ": id " + r.id +
                                            " missing from " + a.predictions[0]);
      if (!seen.insert(r.id).second)
        throw make_error("SchemaError", a.predictions[m] + ": duplicate id " + r.id);
      predictions[m][it->second] = r.label;
    }
  }

  const auto matrix = eval::CorrectnessMatrix::from_predictions(predictions, gold);

  json result;
  result["classifiers"] = json::array();
  for (const auto &p : a.predictions)
    result["classifiers"].push_back(fs::path(p).filename().string());
  result["n"] = gold.size();

  // With exactly two files the McNemar test is the headline number and its
  // failure (identical predictions) fails the command; with more files the
  // pairwise tests are secondary and a degenerate pair is recorded instead.
  json pair_list = json::array();
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    for (std::size_t j = i + 1; j < predictions.size(); ++j) {
      json entry{{"first", i}, {"second", j}};
      try {
        entry["mcnemar"] = test_result_json(
            eval::mcnemar(predictions[i], predictions[j], gold));
      } catch (const Error &e) {
        if (predictions.size() == 2) throw;
        entry["error"] = e.code();
      }
      pair_list.push_back(entry);
    }
  }
  result["pairs"] = pair_list;
  try {
    result["cochran_q"] = test_result_json(eval::cochran_q(matrix));
  } catch (const Error &e) {
    if (predictions.size() == 2 && e.code() == "DegenerateAgreement")
      result["cochran_q"] = json{{"error", e.code()}};
    else if (predictions.size() > 2)
      result["cochran_q"] = json{{"error", e.code()}};
    else
      throw;
  }

  if (a.subset_size > 0) {
    eval::SubsetProtocolResult sub =
        eval::subset_protocol(matrix, a.subset_size, a.seed);
    json sj;
    sj["subset_size"] = sub.subset_size;
    sj["seed"] = sub.seed;
    sj["subsets"] = sub.partitions.size();
    sj["q"] = outcome_json(sub.q);
    json sp = json::array();
    for (const auto &pr : sub.pairs)
      sp.push_back(json{{"first", pr.first},
                        {"second", pr.second},
                        {"mcnemar", outcome_json(pr.outcome)}});
    sj["pairs"] = sp;
    result["subset_protocol"] = sj;
  }

  ensure_out_dir(a.out);
  const std::string cmp_path = join_path(a.out, "comparison.json");
  write_text(cmp_path, result.dump(2) + "\n");
  std::vector<std::string> inputs = {a.input};
  for (const auto &p : a.predictions) inputs.push_back(p);
  json seeds = json::object();
  if (a.subset_size > 0) seeds["subset"] = a.seed;
  emit_manifest(a.out, seeds, inputs, {cmp_path});
  std::cout << "wrote " << cmp_path << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  for (int i = 0; i < argc; ++i) g_argv.push_back(argv[i]);

  CLI::App app{"cashtag disambiguation toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto *gen = app.add_subcommand("generate", "sample a labeled synthetic corpus");
  gen->add_option("--out", gen_args.out, "output directory")->required();
  gen->add_option("--config", gen_args.config, "generator spec JSON");
  auto *gen_n = gen->add_option("--n", gen_args.n, "record count override");
  auto *gen_seed = gen->add_option("--seed", gen_args.seed, "seed override");

  IngestArgs ingest_args;
  auto *ingest = app.add_subcommand("ingest", "validate and canonicalize a corpus");
  ingest->add_option("--input", ingest_args.input, "corpus JSON Lines file")->required();
  ingest->add_option("--out", ingest_args.out, "output directory")->required();
  ingest->add_flag("--lenient", ingest_args.lenient, "skip malformed lines");

  SplitArgs split_args;
  auto *split = app.add_subcommand("split", "partition a corpus into train/tune/test");
  split->add_option("--input", split_args.input, "corpus JSON Lines file")->required();
  split->add_option("--out", split_args.out, "output directory")->required();
  split->add_option("--seed", split_args.spec.seed, "shuffle seed");
  split->add_option("--train-fraction", split_args.spec.train_fraction,
                    "fraction kept for training");
  split->add_option("--tune-fraction", split_args.spec.tune_fraction_of_train,
                    "fraction of the training portion held out for tuning");
  split->add_flag("--stratified", split_args.spec.stratified_by_label,
                  "stratify by label");

  ExploreArgs explore_args;
  auto *explore = app.add_subcommand("explore", "per-class distribution report");
  explore->add_option("--input", explore_args.input, "corpus JSON Lines file")->required();
  explore->add_option("--out", explore_args.out, "output directory")->required();

  FilterArgs filter_args;
  auto *filter = app.add_subcommand("filter", "run a heuristic filter over a corpus");
  filter->add_option("--input", filter_args.input, "corpus JSON Lines file")->required();
  filter->add_option("--out", filter_args.out, "output directory")->required();
  filter->add_option("--mode", filter_args.mode, "simple or extended (default extended)");
  filter->add_option("--config", filter_args.config, "heuristic rule file");

  TrainArgs train_args;
  auto *train = app.add_subcommand("train", "train a classifier");
  train->add_option("--train", train_args.train_path, "training corpus")->required();
  train->add_option("--tune", train_args.tune_path, "tuning corpus");
  train->add_option("--variant", train_args.variant,
                    "basic | extended | combined | independent-combined | "
                    "embedding-combined | embedding-independent");
  train->add_option("--kind", train_args.kind, "margin (default) or logistic-regression");
  train->add_option("--config", train_args.config, "training config JSON");
  train->add_option("--embedding", train_args.embedding_path,
                    "pretrained embedding artifact");
  auto *train_seed = train->add_option("--seed", train_args.seed, "training seed");
  train->add_option("--out", train_args.out, "output directory")->required();

  ClassifyArgs classify_args;
  auto *classify = app.add_subcommand("classify", "score a corpus with a model");
  classify->add_option("--input", classify_args.input, "corpus JSON Lines file")->required();
  classify->add_option("--model", classify_args.model, "model artifact")->required();
  classify->add_option("--out", classify_args.out, "output directory")->required();

  EvaluateArgs eval_args;
  auto *evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--input", eval_args.input, "gold corpus")->required();
  evaluate->add_option("--predictions", eval_args.predictions, "predictions CSV")->required();
  evaluate->add_option("--out", eval_args.out, "output directory")->required();

  CompareArgs compare_args;
  auto *compare = app.add_subcommand("compare", "paired statistics over prediction files");
  compare->add_option("--input", compare_args.input, "gold corpus")->required();
  compare->add_option("--predictions", compare_args.predictions,
                      "two or more predictions CSVs")->required()->expected(2, -1);
  compare->add_option("--subset-size", compare_args.subset_size,
                      "run the subset protocol with this subset size");
  compare->add_option("--seed", compare_args.seed, "subset partition seed");
  compare->add_option("--out", compare_args.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      g_command = "generate";
      gen_args.n_set = gen_n->count() > 0;
      gen_args.seed_set = gen_seed->count() > 0;
      run_generate(gen_args);
    } else if (ingest->parsed()) {
      g_command = "ingest";
      run_ingest(ingest_args);
    } else if (split->parsed()) {
      g_command = "split";
      run_split(split_args);
    } else if (explore->parsed()) {
      g_command = "explore";
      run_explore(explore_args);
    } else if (filter->parsed()) {
      g_command = "filter";
      run_filter(filter_args);
    } else if (train->parsed()) {
      g_command = "train";
      train_args.seed_set = train_seed->count() > 0;
      run_train(train_args);
    } else if (classify->parsed()) {
      g_command = "classify";
      run_classify(classify_args);
    } else if (evaluate->parsed()) {
      g_command = "evaluate";
      run_evaluate(eval_args);
    } else if (compare->parsed()) {
      g_command = "compare";
      run_compare(compare_args);
    }
  } catch (const Error &e) {
    std::cerr << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
