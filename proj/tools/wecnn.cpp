#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wecnn/app/config.hpp"
#include "wecnn/app/sweep.hpp"
#include "wecnn/app/synthetic.hpp"
#include "wecnn/app/tables.hpp"
#include "wecnn/corpus/coverage.hpp"
#include "wecnn/corpus/dataset.hpp"
#include "wecnn/embeddings/embedding_io.hpp"
#include "wecnn/eval/report_io.hpp"
#include "wecnn/eval/significance.hpp"
#include "wecnn/numeric_io.hpp"

namespace {

using namespace wecnn;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kExperimentFailure = 1;
constexpr int kUsage = 2;

/// Raised by command bodies once inputs are validated and real work fails.
struct ExperimentFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  bool resume = false;
};

/// Command-line mirrors of ExperimentConfig fields; unset values keep the
/// config file (or default) value.
struct Overrides {
  std::string config;
  std::optional<std::string> dataset, preprocessing, stopwords, output_dir, embedding_dir;
  std::vector<std::string> corpora;
  std::vector<std::size_t> windows, dimensions;
  std::vector<std::string> classifiers;
  std::optional<std::size_t> emb_batch, negative, iterations, emb_workers;
  std::optional<std::uint64_t> min_frequency;
  std::optional<double> learning_rate, subsample;
  bool no_dynamic_window = false, sigmoid_table = false;
  std::vector<std::size_t> filter_sizes;
  std::optional<std::size_t> filters_per_size, stride, cnn_batch, max_epochs;
  std::optional<double> keep_probability, l2_lambda, sgd_learning_rate;
  std::optional<std::string> optimizer, svm_loss;
  std::optional<double> svm_c, svm_tolerance;
  std::optional<std::size_t> svm_max_epochs;
};

void add_data_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "experiment config (JSON)");
  cmd->add_option("--dataset", o.dataset, "labeled dataset (label<TAB>text or JSON lines)");
  cmd->add_option("--corpus", o.corpora, "background corpus file(s), one document per line");
  cmd->add_option("--preprocessing", o.preprocessing, "spanish | none")->check(CLI::IsMember({"spanish", "none"}));
  cmd->add_option("--stopwords", o.stopwords, "stop-word file (default: bundled Spanish list)");
  cmd->add_option("--output-dir", o.output_dir, "output directory");
  cmd->add_option("--embedding-dir", o.embedding_dir, "embedding directory (default: <output-dir>/embeddings)");
}

void add_embedding_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--windows", o.windows, "context window sizes W");
  cmd->add_option("--dimensions", o.dimensions, "embedding dimensions D");
  cmd->add_option("--emb-batch-size", o.emb_batch, "center words per learning-rate update");
  cmd->add_option("--negative-samples", o.negative, "noise words per pair");
  cmd->add_option("--min-frequency", o.min_frequency, "minimum corpus frequency");
  cmd->add_option("--iterations", o.iterations, "passes over the corpus");
  cmd->add_option("--learning-rate", o.learning_rate, "initial learning rate");
  cmd->add_option("--subsample", o.subsample, "frequent-word subsampling threshold (0 = off)");
  cmd->add_option("--emb-workers", o.emb_workers, "threads per embedding training run");
  cmd->add_flag("--no-dynamic-window", o.no_dynamic_window, "always use the full window");
  cmd->add_flag("--sigmoid-table", o.sigmoid_table, "tabulated sigmoid");
}

void add_classifier_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--filter-sizes", o.filter_sizes, "CNN filter sizes");
  cmd->add_option("--filters-per-size", o.filters_per_size, "CNN filters per size");
  cmd->add_option("--stride", o.stride, "CNN stride");
  cmd->add_option("--keep-probability", o.keep_probability, "CNN dropout keep probability");
  cmd->add_option("--l2-lambda", o.l2_lambda, "CNN L2 strength");
  cmd->add_option("--cnn-batch-size", o.cnn_batch, "CNN mini-batch size");
  cmd->add_option("--max-epochs", o.max_epochs, "CNN epoch limit");
  cmd->add_option("--optimizer", o.optimizer, "adadelta | sgd")->check(CLI::IsMember({"adadelta", "sgd"}));
  cmd->add_option("--sgd-learning-rate", o.sgd_learning_rate, "SGD step size");
  cmd->add_option("--svm-c", o.svm_c, "SVM C");
  cmd->add_option("--svm-loss", o.svm_loss, "squared_hinge | hinge")
      ->check(CLI::IsMember({"squared_hinge", "hinge"}));
  cmd->add_option("--svm-tolerance", o.svm_tolerance, "SVM relative duality gap");
  cmd->add_option("--svm-max-epochs", o.svm_max_epochs, "SVM epoch limit");
}

template <typename T, typename U>
void set_if(const std::optional<T>& v, U& target) {
  if (v) target = *v;
}

app::ExperimentConfig build_config(const Overrides& o, const Globals& g) {
  app::ExperimentConfig c = o.config.empty() ? app::ExperimentConfig{} : app::load_config(o.config);
  if (o.dataset) c.dataset = *o.dataset;
  if (!o.corpora.empty()) c.corpora.assign(o.corpora.begin(), o.corpora.end());
  set_if(o.preprocessing, c.preprocessing);
  if (o.stopwords) c.stopwords = *o.stopwords;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.embedding_dir) c.embedding_dir = *o.embedding_dir;
  if (!o.windows.empty()) c.windows = o.windows;
  if (!o.dimensions.empty()) c.dimensions = o.dimensions;
  if (!o.classifiers.empty()) c.classifiers = o.classifiers;
  set_if(o.emb_batch, c.embedding.batch_size);
  set_if(o.negative, c.embedding.negative_samples);
  set_if(o.min_frequency, c.embedding.min_frequency);
  set_if(o.iterations, c.embedding.iterations);
  set_if(o.learning_rate, c.embedding.learning_rate);
  set_if(o.subsample, c.embedding.subsample);
  set_if(o.emb_workers, c.embedding.workers);
  if (o.no_dynamic_window) c.embedding.dynamic_window = false;
  if (o.sigmoid_table) c.embedding.sigmoid_table = true;
  if (!o.filter_sizes.empty()) c.cnn.filter_sizes = o.filter_sizes;
  set_if(o.filters_per_size, c.cnn.filters_per_size);
  set_if(o.stride, c.cnn.stride);
  set_if(o.keep_probability, c.cnn.keep_probability);
  set_if(o.l2_lambda, c.cnn.l2_lambda);
  set_if(o.cnn_batch, c.cnn.batch_size);
  set_if(o.max_epochs, c.cnn.max_epochs);
  if (o.optimizer) c.cnn.optimizer = *o.optimizer == "sgd" ? cnn::OptimizerKind::sgd : cnn::OptimizerKind::adadelta;
  set_if(o.sgd_learning_rate, c.cnn.sgd_learning_rate);
  set_if(o.svm_c, c.svm.c);
  if (o.svm_loss) c.svm.loss = baselines::parse_svm_loss(*o.svm_loss);
  set_if(o.svm_tolerance, c.svm.tolerance);
  set_if(o.svm_max_epochs, c.svm.max_epochs);
  set_if(g.seed, c.seed);
  set_if(g.workers, c.workers);
  return c;
}

int cmd_preprocess(const std::string& input, const std::string& output, const Overrides& o,
                   const Globals& g) {
  const auto cfg = build_config(o, g);
  cfg.validate(false);
  const auto pre = cfg.preprocessor();
  std::ifstream in(input);
  if (!in) throw IoError("cannot open " + input);
  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (output != "-") {
    out_file.open(output);
    if (!out_file) throw IoError("cannot open " + output + " for writing");
    out = &out_file;
  }
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = pre.surfaces(line);
    for (std::size_t i = 0; i < tokens.size(); ++i) *out << (i ? " " : "") << tokens[i];
    *out << '\n';
  }
  if (!*out) throw IoError("failed to write " + output);
  return kOk;
}

int cmd_train_embeddings(const Overrides& o, const Globals& g, bool force) {
  const auto cfg = build_config(o, g);
  cfg.validate(false);
  if (cfg.corpora.empty()) throw InvalidArgument("no background corpus given (--corpus)");
  for (const auto& c : cfg.corpora) {
    if (!fs::exists(c)) throw IoError("corpus not found: " + c.string());
  }
  std::size_t trained = 0;
  std::vector<fs::path> files;
  try {
    files = app::train_embedding_grid(cfg, !force, &std::cerr, &trained);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentFailure(e.what());
  }
  for (const auto& f : files) std::cout << f.string() << '\n';
  std::cerr << trained << " embedding file(s) trained, " << files.size() - trained << " reused\n";
  return kOk;
}

int cmd_coverage(const Overrides& o, const Globals& g, const std::vector<std::string>& embeddings,
                 std::vector<std::string> names) {
  const auto cfg = build_config(o, g);
  cfg.validate(false);
  if (!o.dataset && cfg.dataset.empty()) throw InvalidArgument("no dataset given (--dataset)");
  if (names.empty()) {
    for (const auto& e : embeddings) names.push_back(fs::path(e).stem().string());
  }
  if (names.size() != embeddings.size()) throw InvalidArgument("--names must match --embeddings");
  const auto dataset = corpus::load_dataset(cfg.dataset, cfg.preprocessor());
  const auto dataset_vocab = dataset.vocabulary();

  std::vector<std::set<std::string>> vocabs;
  std::vector<app::CoverageColumn> columns;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    vocabs.push_back(embeddings::load_embedding_vocabulary(embeddings[i]));
    columns.push_back({names[i], vocabs.back().size(), corpus::coverage(dataset_vocab, vocabs.back())});
  }
  std::cout << "Dataset vocabulary: " << app::format_count(dataset_vocab.size()) << " words\n\n";
  std::cout << app::render_coverage_table(columns);
  if (embeddings.size() == 2) {
    const auto cmp = corpus::compare_coverage(dataset_vocab, vocabs[0], vocabs[1]);
    std::cout << '\n' << app::render_exclusive_table(names[0], corpus::categorize_exclusive(cmp.only_in_a));
    std::cout << '\n' << app::render_exclusive_table(names[1], corpus::categorize_exclusive(cmp.only_in_b));
  }
  return kOk;
}

int cmd_run(const Overrides& o, const Globals& g, const std::string& classifier,
            const std::string& embedding_file) {
  auto cfg = build_config(o, g);
  cfg.classifiers = {classifier};
  cfg.validate(true);
  const auto kind = eval::parse_classifier(classifier);
  if (eval::needs_embeddings(kind) && embedding_file.empty()) {
    throw InvalidArgument(classifier + " needs --embeddings");
  }
  const auto dataset = corpus::load_dataset(cfg.dataset, cfg.preprocessor());
  const auto plan = eval::make_folds(dataset.labels(), cfg.seed);
  std::optional<embeddings::EmbeddingMatrix> matrix;
  if (!embedding_file.empty()) matrix = embeddings::load_embeddings(embedding_file);
  std::optional<embeddings::EmbeddingLookup> lookup;
  if (matrix) lookup.emplace(*matrix, cfg.seed);

  eval::EvalReport report;
  try {
    report = eval::run_experiment(dataset, cfg.classifier_spec(kind), lookup ? &*lookup : nullptr, plan,
                                  cfg.workers);
  } catch (const std::exception& e) {
    throw ExperimentFailure(e.what());
  }
  fs::create_directories(cfg.output_dir);
  app::save_config(cfg, cfg.output_dir / "config.json");
  {
    std::ofstream out(cfg.output_dir / "report.jsonl");
    eval::write_report_jsonl(report, out);
  }
  eval::save_predictions(report, cfg.output_dir / "predictions.tsv");

  std::vector<std::vector<std::string>> rows{{"Fold", "P", "R", "F1", "Acc"}};
  for (const auto& f : report.folds) {
    rows.push_back({std::to_string(f.fold), format_percent(f.metrics.precision), format_percent(f.metrics.recall),
                    format_percent(f.metrics.f1), format_percent(f.accuracy)});
    for (const auto& w : f.warnings) std::cerr << "fold " << f.fold << ": " << w << '\n';
  }
  rows.push_back({"Mean", format_percent(report.mean.precision), format_percent(report.mean.recall),
                  format_percent(report.mean.f1), format_percent(report.mean_accuracy)});
  rows.push_back({"Macro", format_percent(report.macro_mean.precision), format_percent(report.macro_mean.recall),
                  format_percent(report.macro_mean.f1), ""});
  std::cout << report.classifier << '\n' << app::render_grid(rows);
  return kOk;
}

int cmd_sweep(const Overrides& o, const Globals& g) {
  const auto cfg = build_config(o, g);
  cfg.validate(true);
  const auto summary = app::run_sweep(cfg, g.resume, &std::cerr);
  std::cout << summary.table;
  std::cerr << summary.trained_cells << " cell(s) run, " << summary.failures() << " failed\n";
  return summary.failures() == 0 ? kOk : kExperimentFailure;
}

std::vector<Label> read_gold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Label> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(corpus::parse_label(line.substr(0, line.find('\t'))));
    } catch (const Error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

int cmd_mcnemar(const std::string& a_path, const std::string& b_path, const std::string& gold_path) {
  const auto a = eval::load_predictions(a_path);
  const auto b = eval::load_predictions(b_path);
  if (a.predicted.size() != b.predicted.size()) {
    throw InvalidArgument("prediction files differ in length (" + std::to_string(a.predicted.size()) + " vs " +
                          std::to_string(b.predicted.size()) + ")");
  }
  std::vector<Label> gold = gold_path.empty() ? a.gold : read_gold(gold_path);
  if (gold_path.empty() && a.gold != b.gold) throw InvalidArgument("prediction files disagree on gold labels");
  if (gold.size() != a.predicted.size()) throw InvalidArgument("gold labels are not aligned with the predictions");
  const auto r = eval::mcnemar(a.predicted, b.predicted, gold);
  std::cout << "b (A correct, B wrong): " << r.b << '\n'
            << "c (A wrong, B correct): " << r.c << '\n'
            << "method: " << eval::to_string(r.method) << '\n';
  if (r.method == eval::McNemarMethod::chi_square_cc) std::cout << "chi-square: " << format_double(r.statistic) << '\n';
  std::cout << "p-value: " << format_double(r.p_value) << '\n';
  return kOk;
}

int cmd_kappa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<Label>> raters;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '\t');) fields.push_back(f);
    if (raters.empty()) raters.resize(fields.size());
    if (fields.size() != raters.size()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(raters.size()) +
                       " rater columns");
    }
    for (std::size_t r = 0; r < fields.size(); ++r) {
      try {
        raters[r].push_back(corpus::parse_label(fields[r]));
      } catch (const Error& e) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  const double mean = eval::pairwise_mean_kappa(raters);
  for (std::size_t i = 0; i < raters.size(); ++i) {
    for (std::size_t j = i + 1; j < raters.size(); ++j) {
      std::cout << "rater " << i + 1 << " vs " << j + 1 << ": " << format_double(eval::cohen_kappa(raters[i], raters[j]))
                << '\n';
    }
  }
  std::cout << "pairwise mean kappa: " << format_double(mean) << '\n';
  return kOk;
}

int cmd_synth(const std::string& corpus_path, const std::string& dataset_path, app::SyntheticSpec spec,
              const Globals& g) {
  set_if(g.seed, spec.seed);
  const auto data = app::generate_synthetic(spec);
  app::write_synthetic(data, corpus_path, dataset_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Word-embedding CNN tweet classification toolkit"};
  cli.require_subcommand(1);
  Globals g;
  cli.add_option("--seed", g.seed, "master seed");
  cli.add_option("--workers", g.workers, "worker threads");
  cli.add_flag("--resume", g.resume, "skip sweep cells that already finished");

  Overrides o;
  std::string input, output = "-";
  auto* pre = cli.add_subcommand("preprocess", "tokenize, drop stop words and stem, one document per line");
  pre->fallthrough();
  pre->add_option("input", input, "input text file")->required();
  pre->add_option("output", output, "output file (default: stdout)");
  pre->add_option("--preprocessing", o.preprocessing, "spanish | none")->check(CLI::IsMember({"spanish", "none"}));
  pre->add_option("--stopwords", o.stopwords, "stop-word file");

  bool force = false;
  auto* train = cli.add_subcommand("train-embeddings", "train one embedding file per (W, D)");
  train->fallthrough();
  add_data_options(train, o);
  add_embedding_options(train, o);
  train->add_flag("--force", force, "retrain files that already exist");

  std::vector<std::string> embedding_files, names;
  auto* cov = cli.add_subcommand("coverage", "vocabulary coverage of a dataset by embedding files");
  cov->fallthrough();
  add_data_options(cov, o);
  cov->add_option("--embeddings", embedding_files, "embedding files")->required();
  cov->add_option("--names", names, "column names (default: file stems)");

  std::string classifier, embedding_file;
  auto* run = cli.add_subcommand("run", "5-fold evaluation of one classifier");
  run->fallthrough();
  add_data_options(run, o);
  add_classifier_options(run, o);
  run->add_option("--classifier", classifier, "random | svm_tfidf | svm_we | cnn")->required();
  run->add_option("--embeddings", embedding_file, "embedding file (svm_we, cnn)");

  auto* sweep = cli.add_subcommand("sweep", "baselines plus every classifier over the W x D grid");
  sweep->fallthrough();
  add_data_options(sweep, o);
  add_embedding_options(sweep, o);
  add_classifier_options(sweep, o);
  sweep->add_option("--classifiers", o.classifiers, "grid classifiers (svm_we, cnn)");

  std::string a_path, b_path, gold_path;
  auto* mc = cli.add_subcommand("mcnemar", "McNemar test between two prediction files");
  mc->add_option("predictions_a", a_path)->required();
  mc->add_option("predictions_b", b_path)->required();
  mc->add_option("--gold", gold_path, "gold labels, one per line (default: the files' gold column)");

  std::string ratings;
  auto* kappa = cli.add_subcommand("kappa", "pairwise-mean Cohen's kappa; one item per line, one rater per column");
  kappa->add_option("ratings", ratings)->required();

  app::SyntheticSpec spec;
  std::string synth_corpus, synth_dataset;
  auto* synth = cli.add_subcommand("synth", "write the synthetic two-topic corpus and dataset");
  synth->fallthrough();
  synth->add_option("corpus", synth_corpus)->required();
  synth->add_option("dataset", synth_dataset)->required();
  synth->add_option("--background-docs", spec.background_docs);
  synth->add_option("--labeled-docs", spec.labeled_docs);
  synth->add_option("--positive-share", spec.positive_share);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*pre) return cmd_preprocess(input, output, o, g);
    if (*train) return cmd_train_embeddings(o, g, force);
    if (*cov) return cmd_coverage(o, g, embedding_files, names);
    if (*run) return cmd_run(o, g, classifier, embedding_file);
    if (*sweep) return cmd_sweep(o, g);
    if (*mc) return cmd_mcnemar(a_path, b_path, gold_path);
    if (*kappa) return cmd_kappa(ratings);
    if (*synth) return cmd_synth(synth_corpus, synth_dataset, spec, g);
  } catch (const ExperimentFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExperimentFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
