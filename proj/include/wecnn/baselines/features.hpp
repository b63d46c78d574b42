#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wecnn::baselines {

/// Sparse feature vector with strictly increasing indices and no stored zeros.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nonzeros() const { return indices.size(); }
  double squared_norm() const;

  /// Drops exact zeros from a dense vector.
  static SparseVector from_dense(std::span<const double> dense);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Instances sharing one feature space.
struct FeatureSet {
  std::size_t dimension = 0;
  std::vector<SparseVector> rows;
};

}  // namespace wecnn::baselines
