#pragma once

#include <span>
#include <string>
#include <vector>

#include "wecnn/embeddings/embedding_matrix.hpp"

namespace wecnn::cnn {

/// A tweet as k concatenated n-dimensional word vectors, zero-padded.
struct TweetMatrix {
  std::size_t length = 0;  // k, rows
  std::size_t width = 0;   // n, embedding dimension
  std::size_t true_length = 0;
  std::vector<double> values;  // k x n, row-major

  std::span<const double> row(std::size_t i) const { return {values.data() + i * width, width}; }
};

/// Looks up each token (OOV tokens get their synthesized vector). Tokens past
/// `pad_length` are truncated; missing rows are the all-zero pad vector.
TweetMatrix build_tweet_matrix(std::span<const std::string> tokens,
                               const embeddings::EmbeddingLookup& embeddings,
                               std::size_t pad_length);

std::vector<TweetMatrix> build_tweet_matrices(std::span<const std::vector<std::string>> tweets,
                                              const embeddings::EmbeddingLookup& embeddings,
                                              std::size_t pad_length);

}  // namespace wecnn::cnn
