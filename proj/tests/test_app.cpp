#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wecnn/app/config.hpp"
#include "wecnn/app/sweep.hpp"
#include "wecnn/app/synthetic.hpp"
#include "wecnn/app/tables.hpp"
#include "wecnn/common.hpp"
#include "wecnn/corpus/preprocess.hpp"
#include "wecnn/embeddings/embedding_io.hpp"

using namespace wecnn;
using namespace wecnn::app;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() / ("wecnn_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct CliResult {
  int status = -1;
  std::string output;
};

CliResult cli(const std::string& args, const TempDir& dir) {
  const auto out = dir / "cli_output.txt";
  const std::string cmd = std::string(WECNN_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.output = slurp(out);
  return r;
}

ExperimentConfig small_sweep(const TempDir& dir, std::vector<std::size_t> windows,
                             std::vector<std::size_t> dimensions) {
  SyntheticSpec spec;
  spec.background_docs = 1500;
  spec.labeled_docs = 150;
  spec.topic_size = 30;
  spec.shared_size = 15;
  spec.seed = 4;
  write_synthetic(generate_synthetic(spec), dir / "corpus.txt", dir / "data.tsv");

  ExperimentConfig cfg;
  cfg.dataset = dir / "data.tsv";
  cfg.corpora = {dir / "corpus.txt"};
  cfg.preprocessing = "none";
  cfg.windows = std::move(windows);
  cfg.dimensions = std::move(dimensions);
  cfg.output_dir = dir / "out";
  cfg.embedding.iterations = 2;
  cfg.embedding.min_frequency = 1;
  cfg.cnn.filters_per_size = 3;
  cfg.cnn.max_epochs = 2;
  cfg.seed = 8;
  return cfg;
}

}  // namespace

TEST_CASE("config json round-trip") {
  ExperimentConfig cfg;
  cfg.dataset = "data.tsv";
  cfg.corpora = {"a.txt", "b.txt"};
  cfg.windows = {2, 4};
  cfg.dimensions = {30};
  cfg.classifiers = {"cnn"};
  cfg.seed = 42;
  cfg.cnn.filter_sizes = {2, 3};
  cfg.cnn.keep_probability = 0.7;
  cfg.svm.c = 0.25;
  cfg.svm.loss = baselines::SvmLoss::hinge;
  cfg.embedding.subsample = 1e-3;
  const auto j = to_json(cfg);
  const auto back = config_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.windows == cfg.windows);
  CHECK(back.cnn.filter_sizes == cfg.cnn.filter_sizes);
  CHECK(back.svm.loss == baselines::SvmLoss::hinge);
  CHECK(back.seed == 42);
  CHECK(back.embedding_config(4, 30).window == 4);
  CHECK(back.embedding_config(4, 30).dimension == 30);
}

TEST_CASE("config rejects unknown keys and bad values") {
  auto j = to_json(ExperimentConfig{});
  j["windowz"] = {1};
  CHECK_THROWS(config_from_json(j));
  auto nested = to_json(ExperimentConfig{});
  nested["cnn"]["filterz"] = 3;
  CHECK_THROWS(config_from_json(nested));

  ExperimentConfig cfg;
  cfg.classifiers = {};
  CHECK_THROWS_AS(cfg.validate(false), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.classifiers = {"bayes"};
  CHECK_THROWS_AS(cfg.validate(false), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.windows = {};
  CHECK_THROWS_AS(cfg.validate(false), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.preprocessing = "porter";
  CHECK_THROWS_AS(cfg.validate(false), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.dataset = "/nonexistent/data.tsv";
  cfg.corpora = {"/nonexistent/c.txt"};
  CHECK_NOTHROW(cfg.validate(false));
  CHECK_THROWS(cfg.validate(true));
}

TEST_CASE("config files") {
  TempDir dir("config");
  ExperimentConfig cfg;
  cfg.seed = 7;
  save_config(cfg, dir / "c.json");
  CHECK(load_config(dir / "c.json").seed == 7);
  spit(dir / "bad.json", "{not json");
  CHECK_THROWS(load_config(dir / "bad.json"));
  CHECK_THROWS(load_config(dir / "missing.json"));
  CHECK(embedding_file_name(5, 200) == "emb_w5_d200.vec");
  cfg.output_dir = "r";
  CHECK(cfg.embeddings_directory() == fs::path("r") / "embeddings");
  cfg.embedding_dir = "e";
  CHECK(cfg.embeddings_directory() == fs::path("e"));
}

TEST_CASE("table helpers") {
  CHECK(format_count(0) == "0");
  CHECK(format_count(999) == "999");
  CHECK(format_count(1000) == "1,000");
  CHECK(format_count(1234567) == "1,234,567");
  CHECK(truncated_percent(0.6676) == "66%");
  CHECK(truncated_percent(1.0) == "100%");
  CHECK(truncated_percent(0.29) == "29%");
  CHECK(truncated_percent(0.0) == "0%");

  const auto grid = render_grid({{"a", "1"}, {"long", "100"}});
  CHECK(grid == "a       1\nlong  100\n");

  corpus::CoverageReport r{4, 3, 0.75};
  const auto cov = render_coverage_table({{"es-Wiki", 12345, r}});
  CHECK(cov.find("Vocabulary Size") != std::string::npos);
  CHECK(cov.find("12,345") != std::string::npos);
  CHECK(cov.find("75%") != std::string::npos);

  const auto excl = render_exclusive_table("es-Twitter", {2, 1, 3});
  CHECK(excl.find("Vocabulary only covered by es-Twitter") != std::string::npos);
  CHECK(excl.find("Twitter handles") != std::string::npos);
  CHECK(excl.find("Hashtags") != std::string::npos);
  CHECK(excl.find("Total") != std::string::npos);
}

TEST_CASE("synthetic generator") {
  SyntheticSpec spec;
  spec.background_docs = 100;
  spec.labeled_docs = 50;
  const auto d = generate_synthetic(spec);
  CHECK(d.topic_a.size() == 200);
  CHECK(d.topic_b.size() == 200);
  CHECK(d.shared.size() == 100);
  CHECK(d.background.size() == 100);
  CHECK(d.labeled.size() == 50);
  CHECK(d.labeled.count(Label::positive) == 20);
  for (const auto& doc : d.background) {
    CHECK(doc.size() >= 15);
    CHECK(doc.size() <= 25);
  }
  const auto again = generate_synthetic(spec);
  CHECK(again.background == d.background);
  spec.seed = 2;
  CHECK(generate_synthetic(spec).background != d.background);
  spec.max_length = 3;
  CHECK_THROWS_AS(generate_synthetic(spec), InvalidArgument);
}

TEST_CASE("a sweep resumes without retraining") {
  TempDir dir("sweep");
  const auto cfg = small_sweep(dir, {2}, {8});
  const auto first = run_sweep(cfg, false, nullptr);
  CHECK(first.failures() == 0);
  CHECK(first.cells.size() == 4);
  CHECK(first.trained_cells == 4);
  CHECK(first.trained_embeddings == 1);
  CHECK(first.best_cnn.has_value());
  CHECK(first.best_cnn_vs_tfidf.has_value());
  CHECK(fs::exists(cfg.output_dir / "results.txt"));
  CHECK(fs::exists(cfg.output_dir / "results.jsonl"));
  CHECK(fs::exists(cfg.output_dir / "config.json"));
  CHECK(fs::exists(cfg.output_dir / "cells" / "cnn_w2_d8" / "DONE"));
  CHECK(fs::exists(cfg.output_dir / "cells" / "svm_tfidf" / "predictions.tsv"));
  CHECK(slurp(cfg.output_dir / "results.txt") == first.table);
  CHECK(first.table.find("SVM+TFIDF") != std::string::npos);

  const auto second = run_sweep(cfg, true, nullptr);
  CHECK(second.trained_cells == 0);
  CHECK(second.trained_embeddings == 0);
  CHECK(second.table == first.table);
  for (const auto& c : second.cells) CHECK(c.resumed);

  std::ifstream jl(cfg.output_dir / "results.jsonl");
  std::string line;
  std::size_t cells = 0, comparisons = 0;
  while (std::getline(jl, line)) {
    const auto j = nlohmann::json::parse(line);
    cells += j.at("type") == "cell";
    comparisons += j.at("type") == "comparison";
  }
  CHECK(cells == 4);
  CHECK(comparisons == 1);
}

TEST_CASE("sweep grid size") {
  TempDir dir("grid");
  auto cfg = small_sweep(dir, {1, 2, 3}, {4, 5, 6});
  cfg.cnn.max_epochs = 1;
  std::size_t trained = 0;
  const auto paths = train_embedding_grid(cfg, true, nullptr, &trained);
  CHECK(paths.size() == 9);
  CHECK(trained == 9);
  for (const auto& p : paths) CHECK(embeddings::load_embeddings(p).rows() > 0);
  const auto summary = run_sweep(cfg, false, nullptr);
  CHECK(summary.cells.size() == 2 + 2 * 9);
  CHECK(summary.trained_embeddings == 0);
  CHECK(summary.failures() == 0);
}

TEST_CASE("cell names") {
  CHECK(CellKey{eval::ClassifierKind::cnn, 5, 200}.name() == "cnn_w5_d200");
  CHECK(CellKey{eval::ClassifierKind::svm_tfidf, 0, 0}.name() == "svm_tfidf");
  CHECK_FALSE(CellKey{eval::ClassifierKind::random, 0, 0}.uses_grid());
}

TEST_CASE("cli exit codes") {
  TempDir dir("cli");
  spit(dir / "empty.txt", "");
  CHECK(cli("preprocess " + (dir / "empty.txt").string(), dir).status == 0);
  CHECK(cli("preprocess " + (dir / "missing.txt").string(), dir).status == 2);
  CHECK(cli("--help", dir).status == 0);
  CHECK(cli("no-such-command", dir).status == 2);
  CHECK(cli("", dir).status == 2);

  spit(dir / "a.tsv", "0\t1\t1\n1\t0\t0\n2\t1\t0\n");
  spit(dir / "b.tsv", "0\t1\t1\n1\t0\t1\n");
  const auto same = cli("mcnemar " + (dir / "a.tsv").string() + " " + (dir / "a.tsv").string(), dir);
  CHECK(same.status == 0);
  CHECK(same.output.find("p-value: 1") != std::string::npos);
  CHECK(cli("mcnemar " + (dir / "a.tsv").string() + " " + (dir / "b.tsv").string(), dir).status == 2);

  spit(dir / "ratings.tsv", "1\t1\n1\t0\n0\t0\n0\t1\n");
  const auto kappa = cli("kappa " + (dir / "ratings.tsv").string(), dir);
  CHECK(kappa.status == 0);
  CHECK(kappa.output.find('0') != std::string::npos);

  spit(dir / "d.tsv", "1\ta b\n0\tc d\n");
  CHECK(cli("sweep --dataset " + (dir / "d.tsv").string() + " --corpus " + (dir / "d.tsv").string() +
                " --classifiers",
            dir)
            .status == 2);
}

TEST_CASE("cli preprocess output is stable under a second pass") {
  TempDir dir("pre");
  spit(dir / "in.txt", "Las elecciones presidenciales del domingo\nVotamos por el candidato\n");
  const auto first = cli("preprocess " + (dir / "in.txt").string() + " " + (dir / "once.txt").string(), dir);
  REQUIRE(first.status == 0);
  const auto once = slurp(dir / "once.txt");
  CHECK_FALSE(once.empty());
  REQUIRE(cli("preprocess " + (dir / "once.txt").string() + " " + (dir / "twice.txt").string(), dir).status == 0);
  // Snowball stems are not always fixed points, so a second pass may shorten
  // a stem further but never adds or reorders tokens.
  std::istringstream a(once), b(slurp(dir / "twice.txt"));
  std::string la, lb;
  while (std::getline(a, la)) {
    REQUIRE(static_cast<bool>(std::getline(b, lb)));
    std::istringstream ta(la), tb(lb);
    std::string wa, wb;
    while (ta >> wa) {
      REQUIRE(static_cast<bool>(tb >> wb));
      CHECK(wa.rfind(wb, 0) == 0);
    }
    CHECK_FALSE(static_cast<bool>(tb >> wb));
  }
}
