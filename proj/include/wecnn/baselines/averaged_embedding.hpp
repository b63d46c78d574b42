#pragma once

#include <span>
#include <string>
#include <vector>

#include "wecnn/baselines/features.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"

namespace wecnn::baselines {

struct AveragedVector {
  std::vector<double> values;
  std::size_t word_count = 0;

  /// True for an empty tweet; `values` is then the zero vector.
  bool empty() const { return word_count == 0; }
};

/// Per-dimension mean of the tweet's word vectors. OOV tokens contribute
/// their synthesized vector.
AveragedVector swe_represent(std::span<const std::string> tokens,
                             const embeddings::EmbeddingLookup& embeddings);

FeatureSet swe_features(std::span<const std::vector<std::string>> documents,
                        const embeddings::EmbeddingLookup& embeddings);

}  // namespace wecnn::baselines
