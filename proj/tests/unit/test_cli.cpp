#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"
#include "cashtag/manifest.hpp"

using namespace cashtag;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char *env = std::getenv("CASHTAG_CLI");
  REQUIRE_MESSAGE(env != nullptr, "CASHTAG_CLI must point at the built binary");
  return env;
}

const fs::path kRoot = fs::temp_directory_path() / "cashtag_cli_tests";

int run(const std::string &args, const fs::path &stderr_to = {}) {
  std::string cmd = cli_path() + " " + args + " >/dev/null";
  if (stderr_to.empty())
    cmd += " 2>/dev/null";
  else
    cmd += " 2>" + stderr_to.string();
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const fs::path &path) {
  std::istringstream in(slurp(path));
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

// One shared end-to-end chain; later cases reuse the earlier artifacts.
void ensure_chain() {
  static bool done = false;
  if (done) return;
  done = true;
  fs::remove_all(kRoot);
  fs::create_directories(kRoot);

  REQUIRE(run("generate --out " + (kRoot / "gen").string() + " --n 400 --seed 4") == 0);
  REQUIRE(run("split --input " + (kRoot / "gen/corpus.jsonl").string() + " --out " +
              (kRoot / "split").string() + " --seed 2") == 0);

  std::ofstream cfg(kRoot / "train_config.json");
  cfg << "{\"train\": {\"max_epochs\": 25}}\n";
  cfg.close();
  REQUIRE(run("train --train " + (kRoot / "split/train.jsonl").string() + " --tune " +
              (kRoot / "split/tune.jsonl").string() + " --out " +
              (kRoot / "model").string() +
              " --variant combined --kind margin --seed 5 --config " +
              (kRoot / "train_config.json").string()) == 0);

  REQUIRE(run("classify --input " + (kRoot / "split/test.jsonl").string() +
              " --model " + (kRoot / "model/model.json").string() + " --out " +
              (kRoot / "pred").string()) == 0);
  REQUIRE(run("filter --input " + (kRoot / "split/test.jsonl").string() +
              " --mode simple --out " + (kRoot / "filter").string()) == 0);
}

}  // namespace

TEST_CASE("bad invocations fail without crashing") {
  CHECK(run("") != 0);                         // a subcommand is required
  CHECK(run("generate --out /tmp/x --nope") != 0);
  CHECK(run("generate") != 0);                 // --out is required
  CHECK(run("frobnicate") != 0);
}

TEST_CASE("generate writes a corpus plus a faithful manifest") {
  ensure_chain();
  const fs::path corpus_path = kRoot / "gen/corpus.jsonl";
  corpus::Dataset ds = corpus::load_dataset(corpus_path.string());
  CHECK(ds.records.size() == 400);

  manifest::RunManifest m = manifest::load_manifest((kRoot / "gen/manifest.json").string());
  CHECK(m.command == "generate");
  REQUIRE(!m.argv.empty());
  bool found = false;
  for (const auto &entry : m.outputs)
    if (entry.path.find("corpus.jsonl") != std::string::npos) {
      found = true;
      CHECK(entry.fingerprint == manifest::fingerprint_file(corpus_path.string()));
    }
  CHECK(found);
  CHECK(m.seeds.contains("generate"));
}

TEST_CASE("generation replays to identical bytes") {
  ensure_chain();
  REQUIRE(run("generate --out " + (kRoot / "gen_replay").string() +
              " --n 400 --seed 4") == 0);
  CHECK(manifest::fingerprint_file((kRoot / "gen_replay/corpus.jsonl").string()) ==
        manifest::fingerprint_file((kRoot / "gen/corpus.jsonl").string()));
}

TEST_CASE("split produces the documented partition sizes") {
  ensure_chain();
  // 400 records: 280 to the train portion, 28 of those to tune, 120 to test.
  CHECK(corpus::load_dataset((kRoot / "split/train.jsonl").string()).records.size() == 252);
  CHECK(corpus::load_dataset((kRoot / "split/tune.jsonl").string()).records.size() == 28);
  CHECK(corpus::load_dataset((kRoot / "split/test.jsonl").string()).records.size() == 120);
}

TEST_CASE("classify and filter emit one prediction per record") {
  ensure_chain();
  CHECK(line_count(kRoot / "pred/predictions.csv") == 121);   // header + 120
  CHECK(line_count(kRoot / "filter/predictions.csv") == 121);
  const std::string head = slurp(kRoot / "pred/predictions.csv").substr(0, 15);
  CHECK(head == "id,label,score\n");
}

TEST_CASE("evaluate reports the standard metrics") {
  ensure_chain();
  REQUIRE(run("evaluate --input " + (kRoot / "split/test.jsonl").string() +
              " --predictions " + (kRoot / "pred/predictions.csv").string() +
              " --out " + (kRoot / "eval").string()) == 0);
  const std::string report = slurp(kRoot / "eval/report.csv");
  CHECK(report.find("accuracy,") != std::string::npos);
  CHECK(report.find("f_score,") != std::string::npos);
  CHECK(report.find("auc,") != std::string::npos);
  CHECK(line_count(kRoot / "eval/roc.csv") >= 3);
  CHECK(fs::exists(kRoot / "eval/report.txt"));
}

TEST_CASE("compare flags identical prediction files as degenerate") {
  ensure_chain();
  const fs::path err = kRoot / "compare_err.txt";
  const std::string preds = (kRoot / "pred/predictions.csv").string();
  CHECK(run("compare --input " + (kRoot / "split/test.jsonl").string() +
                " --predictions " + preds + " " + preds + " --out " +
                (kRoot / "cmp_same").string(),
            err) != 0);
  const std::string message = slurp(err);
  CHECK(message.find("NoDisagreement") != std::string::npos);
  nlohmann::json parsed = nlohmann::json::parse(message);
  CHECK(parsed.at("error").at("code") == "NoDisagreement");
}

TEST_CASE("compare contrasts a model with a filter") {
  ensure_chain();
  REQUIRE(run("compare --input " + (kRoot / "split/test.jsonl").string() +
              " --predictions " + (kRoot / "pred/predictions.csv").string() + " " +
              (kRoot / "filter/predictions.csv").string() + " --out " +
              (kRoot / "cmp").string() + " --subset-size 40 --seed 3") == 0);
  nlohmann::json cmp = nlohmann::json::parse(slurp(kRoot / "cmp/comparison.json"));
  REQUIRE(cmp.contains("pairs"));
  REQUIRE(cmp.at("pairs").size() == 1);
  const auto &mcnemar = cmp.at("pairs").at(0).at("mcnemar");
  CHECK(mcnemar.contains("statistic"));
  CHECK(mcnemar.contains("p_value"));
  CHECK(cmp.at("n") == 120);
  CHECK(cmp.contains("subset_protocol"));
  CHECK(cmp.at("subset_protocol").at("subsets") == 3);
}

TEST_CASE("ingest validates and canonicalizes") {
  ensure_chain();
  // Two valid lines and one broken line.
  corpus::Dataset ds = corpus::load_dataset((kRoot / "gen/corpus.jsonl").string());
  const fs::path mixed = kRoot / "mixed.jsonl";
  {
    std::ofstream out(mixed, std::ios::binary);
    out << corpus::record_to_json_line(ds.records[0]) << "\n";
    out << "{\"id\": \"broken\"}\n";
    out << corpus::record_to_json_line(ds.records[1]) << "\n";
  }
  CHECK(run("ingest --input " + mixed.string() + " --out " +
            (kRoot / "ingest_strict").string()) != 0);
  REQUIRE(run("ingest --input " + mixed.string() + " --out " +
              (kRoot / "ingest_lenient").string() + " --lenient") == 0);
  corpus::Dataset kept =
      corpus::load_dataset((kRoot / "ingest_lenient/corpus.jsonl").string());
  CHECK(kept.records.size() == 2);
}
