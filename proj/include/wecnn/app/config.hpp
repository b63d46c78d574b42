#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wecnn/baselines/linear_svm.hpp"
#include "wecnn/cnn/config.hpp"
#include "wecnn/corpus/preprocess.hpp"
#include "wecnn/embeddings/config.hpp"
#include "wecnn/eval/experiment.hpp"

namespace wecnn::app {

/// Everything a sweep needs. A single `seed` drives embedding training, fold
/// assignment, OOV vectors and classifier initialization.
struct ExperimentConfig {
  std::filesystem::path dataset;
  std::vector<std::filesystem::path> corpora;
  std::string preprocessing = "spanish";  // "spanish" or "none" (whitespace split)
  std::filesystem::path stopwords;        // empty: bundled Spanish list
  std::vector<std::size_t> windows{1, 3, 5};
  std::vector<std::size_t> dimensions{200, 500, 800};
  std::vector<std::string> classifiers{"svm_we", "cnn"};
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "results";
  std::filesystem::path embedding_dir;  // empty: <output_dir>/embeddings
  std::size_t workers = 1;
  embeddings::EmbeddingConfig embedding;
  cnn::CnnConfig cnn;
  baselines::SvmConfig svm;

  /// Throws InvalidArgument on an empty grid, an unknown classifier or
  /// preprocessing mode, or bad module settings. With `check_paths`, the
  /// dataset and corpus files must exist.
  void validate(bool check_paths) const;

  corpus::Preprocessor preprocessor() const;
  std::filesystem::path embeddings_directory() const;
  std::vector<eval::ClassifierKind> classifier_kinds() const;
  embeddings::EmbeddingConfig embedding_config(std::size_t window, std::size_t dimension) const;
  eval::ClassifierSpec classifier_spec(eval::ClassifierKind kind) const;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Unknown keys are rejected so that typos do not silently fall back to defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

/// `emb_w{W}_d{D}.vec`
std::string embedding_file_name(std::size_t window, std::size_t dimension);

}  // namespace wecnn::app
