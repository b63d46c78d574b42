#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wecnn/corpus/vocabulary.hpp"
#include "wecnn/embeddings/config.hpp"

namespace wecnn::embeddings {

/// |V| x D input (word) vectors plus the matching context vectors.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;

  /// `output_vectors` may be empty (e.g. after loading from a text file).
  /// Throws InvalidArgument if shapes disagree or an entry is not finite.
  EmbeddingMatrix(corpus::Vocabulary vocab, std::vector<double> input_vectors,
                  std::vector<double> output_vectors, EmbeddingConfig config);

  const corpus::Vocabulary& vocab() const { return vocab_; }
  const EmbeddingConfig& config() const { return config_; }
  std::size_t dimension() const { return config_.dimension; }
  std::size_t rows() const { return vocab_.size(); }

  std::span<const double> row(std::size_t index) const {
    return {input_.data() + index * dimension(), dimension()};
  }
  std::span<const double> output_row(std::size_t index) const {
    return {output_.data() + index * dimension(), dimension()};
  }
  bool has_output_vectors() const { return !output_.empty(); }

  /// The token's input vector, or nullopt when the token is out of vocabulary.
  std::optional<std::span<const double>> lookup(std::string_view token) const;

  std::span<const double> input_data() const { return input_; }
  std::span<const double> output_data() const { return output_; }

 private:
  corpus::Vocabulary vocab_;
  std::vector<double> input_;
  std::vector<double> output_;
  EmbeddingConfig config_;
};

/// Per-dimension mean and (population) standard deviation of the input vectors.
struct EmbeddingStats {
  std::vector<double> mean;
  std::vector<double> stddev;

  static EmbeddingStats compute(const EmbeddingMatrix& matrix);
  std::size_t dimension() const { return mean.size(); }
};

/// Vector for an out-of-vocabulary token: component i is drawn uniformly from
/// [mean_i - stddev_i, mean_i + stddev_i]. The draw is a pure function of
/// (token, seed), so a token maps to the same vector every time.
std::vector<double> oov_vector(const EmbeddingStats& stats, std::string_view token,
                               std::uint64_t seed);

/// Lookup with OOV synthesis; what the classifiers consume.
class EmbeddingLookup {
 public:
  EmbeddingLookup(const EmbeddingMatrix& matrix, std::uint64_t oov_seed);

  std::size_t dimension() const { return matrix_->dimension(); }
  bool contains(std::string_view token) const { return matrix_->lookup(token).has_value(); }

  /// Writes the vector for `token` into `out` (size dimension()).
  void vector_for(std::string_view token, std::span<double> out) const;
  std::vector<double> vector_for(std::string_view token) const;

  const EmbeddingMatrix& matrix() const { return *matrix_; }
  const EmbeddingStats& stats() const { return stats_; }

 private:
  const EmbeddingMatrix* matrix_;
  EmbeddingStats stats_;
  std::uint64_t seed_;
};

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace wecnn::embeddings
