#pragma once

#include <cstddef>
#include <cstdint>

namespace wecnn::embeddings {

/// Skip-gram training parameters. Defaults for batch size, negative samples,
/// minimum frequency and iterations are the values used for the election
/// study; W=5, D=500 is its background-corpus comparison setting.
struct EmbeddingConfig {
  std::size_t window = 5;  // tokens on each side of the center word
  std::size_t dimension = 500;
  std::size_t batch_size = 50;  // center words per learning-rate update / work unit
  std::size_t negative_samples = 10;
  std::uint64_t min_frequency = 5;
  std::size_t iterations = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  bool dynamic_window = true;
  double subsample = 0.0;  // word2vec-style frequent-word threshold; 0 disables
  bool sigmoid_table = false;
  std::size_t workers = 1;

  /// Throws InvalidArgument on an unusable configuration.
  void validate() const;
};

}  // namespace wecnn::embeddings
