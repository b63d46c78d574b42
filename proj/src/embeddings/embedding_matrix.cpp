#include "wecnn/embeddings/embedding_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "wecnn/common.hpp"
#include "wecnn/random.hpp"

namespace wecnn::embeddings {

void EmbeddingConfig::validate() const {
  if (window < 1) throw InvalidArgument("embedding window must be >= 1");
  if (dimension < 1) throw InvalidArgument("embedding dimension must be >= 1");
  if (batch_size < 1) throw InvalidArgument("embedding batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw InvalidArgument("embedding learning rate must be > 0");
  if (subsample < 0.0) throw InvalidArgument("subsample threshold must be >= 0");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
}

EmbeddingMatrix::EmbeddingMatrix(corpus::Vocabulary vocab, std::vector<double> input_vectors,
                                 std::vector<double> output_vectors, EmbeddingConfig config)
    : vocab_(std::move(vocab)),
      input_(std::move(input_vectors)),
      output_(std::move(output_vectors)),
      config_(config) {
  if (config_.dimension < 1) throw InvalidArgument("embedding dimension must be >= 1");
  const std::size_t expected = vocab_.size() * config_.dimension;
  if (input_.size() != expected) throw InvalidArgument("input vector shape does not match vocabulary");
  if (!output_.empty() && output_.size() != expected) {
    throw InvalidArgument("output vector shape does not match vocabulary");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(input_.begin(), input_.end(), finite) ||
      !std::all_of(output_.begin(), output_.end(), finite)) {
    throw InvalidArgument("embedding contains a non-finite value");
  }
}

std::optional<std::span<const double>> EmbeddingMatrix::lookup(std::string_view token) const {
  const auto idx = vocab_.index_of(token);
  if (!idx) return std::nullopt;
  return row(*idx);
}

EmbeddingStats EmbeddingStats::compute(const EmbeddingMatrix& matrix) {
  const std::size_t d = matrix.dimension();
  EmbeddingStats s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  const std::size_t n = matrix.rows();
  if (n == 0) return s;
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = matrix.row(r);
    for (std::size_t i = 0; i < d; ++i) s.mean[i] += row[i];
  }
  for (auto& m : s.mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = matrix.row(r);
    for (std::size_t i = 0; i < d; ++i) {
      const double dev = row[i] - s.mean[i];
      s.stddev[i] += dev * dev;
    }
  }
  for (auto& v : s.stddev) v = std::sqrt(v / static_cast<double>(n));
  return s;
}

std::vector<double> oov_vector(const EmbeddingStats& stats, std::string_view token,
                               std::uint64_t seed) {
  Rng rng(mix_seed(seed, fnv1a(token)));
  std::vector<double> out(stats.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double lo = stats.mean[i] - stats.stddev[i];
    const double hi = stats.mean[i] + stats.stddev[i];
    const double u = rng.uniform();
    out[i] = std::clamp(lo + 2.0 * stats.stddev[i] * u, lo, hi);
  }
  return out;
}

EmbeddingLookup::EmbeddingLookup(const EmbeddingMatrix& matrix, std::uint64_t oov_seed)
    : matrix_(&matrix), stats_(EmbeddingStats::compute(matrix)), seed_(oov_seed) {}

void EmbeddingLookup::vector_for(std::string_view token, std::span<double> out) const {
  if (const auto row = matrix_->lookup(token)) {
    std::copy(row->begin(), row->end(), out.begin());
    return;
  }
  const auto v = oov_vector(stats_, token, seed_);
  std::copy(v.begin(), v.end(), out.begin());
}

std::vector<double> EmbeddingLookup::vector_for(std::string_view token) const {
  std::vector<double> out(dimension());
  vector_for(token, out);
  return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace wecnn::embeddings
