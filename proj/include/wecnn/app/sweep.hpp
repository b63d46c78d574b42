#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wecnn/app/config.hpp"
#include "wecnn/eval/experiment.hpp"
#include "wecnn/eval/significance.hpp"

namespace wecnn::app {

/// One classifier at one (W, D) setting. Baselines that use no embeddings
/// have window = dimension = 0.
struct CellKey {
  eval::ClassifierKind kind = eval::ClassifierKind::random;
  std::size_t window = 0;
  std::size_t dimension = 0;

  bool uses_grid() const { return window != 0; }
  std::string name() const;  // "cnn_w5_d200", "svm_tfidf"
};

struct CellOutcome {
  CellKey key;
  bool ok = false;
  bool resumed = false;
  std::string error;
  eval::Metrics mean;
  eval::Metrics macro_mean;
  double accuracy = 0.0;
  std::vector<Label> gold;
  std::vector<Label> predictions;
  std::optional<eval::McNemarResult> versus_tfidf;
};

struct SweepSummary {
  std::vector<CellOutcome> cells;  // baselines first, then grid order
  std::vector<std::size_t> windows;
  std::vector<std::size_t> dimensions;
  std::optional<std::size_t> best_cnn;  // index into cells
  std::optional<eval::McNemarResult> best_cnn_vs_tfidf;
  std::string table;
  std::size_t trained_cells = 0;
  std::size_t trained_embeddings = 0;

  std::size_t failures() const;
};

/// Trains every missing `emb_w{W}_d{D}.vec` of the grid into the embedding
/// directory and returns all grid paths in (W, D) order. Existing files are
/// kept when `skip_existing` is set.
std::vector<std::filesystem::path> train_embedding_grid(const ExperimentConfig& config,
                                                        bool skip_existing, std::ostream* log,
                                                        std::size_t* trained = nullptr);

/// Runs the baselines plus every (classifier, W, D) cell. Each cell writes
/// report.jsonl, predictions.tsv and a DONE marker under
/// <output_dir>/cells/<name>/; with `resume`, finished cells are read back
/// instead of retrained. Writes config.json, results.jsonl and results.txt
/// to the output directory. Cell failures are recorded, not thrown.
SweepSummary run_sweep(const ExperimentConfig& config, bool resume, std::ostream* log);

/// The results table: baselines with the best SVM+WE setting, then P/R/F1
/// per window row and dimension column group.
std::string render_results_table(const SweepSummary& summary);

}  // namespace wecnn::app
