#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wecnn/baselines/linear_svm.hpp"
#include "wecnn/cnn/config.hpp"
#include "wecnn/corpus/dataset.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"
#include "wecnn/eval/folds.hpp"
#include "wecnn/eval/metrics.hpp"

namespace wecnn::eval {

enum class ClassifierKind { random, svm_tfidf, svm_we, cnn };

std::string to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view text);
bool needs_embeddings(ClassifierKind kind);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::cnn;
  /// Per-fold seeds for every random choice are derived from this value;
  /// the seeds inside `svm` and `cnn` are ignored.
  std::uint64_t seed = 1;
  baselines::SvmConfig svm;
  cnn::CnnConfig cnn;
};

struct FoldResult {
  std::size_t fold = 0;
  Metrics metrics;        // positive class
  Metrics macro;          // mean over both classes
  double accuracy = 0.0;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
  std::size_t test_size = 0;
  std::size_t best_epoch = 0;  // CNN only
  std::vector<std::string> warnings;
};

struct EvalReport {
  std::string classifier;
  std::vector<FoldResult> folds;
  Metrics mean;  // unweighted mean over folds; degenerate if any fold is
  Metrics macro_mean;
  double mean_accuracy = 0.0;
  std::vector<Label> gold;         // indexed like the dataset
  std::vector<Label> predictions;  // test-time prediction of every instance
};

/// Trains on the three training partitions of each fold and evaluates on its
/// test partition. Only the CNN looks at the validation partition (for early
/// stopping). `embeddings` is required for svm_we and cnn. Up to `workers`
/// folds run concurrently; the result does not depend on `workers`.
EvalReport run_experiment(const corpus::LabeledDataset& dataset, const ClassifierSpec& spec,
                          const embeddings::EmbeddingLookup* embeddings, const FoldPlan& folds,
                          std::size_t workers = 1);

}  // namespace wecnn::eval
