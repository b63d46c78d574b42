#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wecnn/cnn/config.hpp"
#include "wecnn/cnn/tweet_matrix.hpp"

namespace wecnn::cnn {

inline constexpr std::size_t kClassCount = 2;

/// `count` filters, each covering `width` consecutive word vectors.
struct FilterBank {
  std::size_t width = 0;
  std::size_t count = 0;
  std::vector<double> weights;  // count x width x n
  std::vector<double> bias;     // count

  std::span<const double> filter(std::size_t f, std::size_t n) const {
    return {weights.data() + f * width * n, width * n};
  }
};

/// All trainable tensors. Also used as the gradient / optimizer-state shape.
struct CnnParameters {
  std::vector<FilterBank> banks;
  std::vector<double> softmax_weights;  // features x classes
  std::vector<double> softmax_bias;     // classes

  /// Visits every tensor in serialization order; `regularized` is true for
  /// weight tensors covered by the L2 penalty (filters and softmax weights).
  void for_each_tensor(const std::function<void(std::span<double>, bool regularized)>& fn);
  void for_each_tensor(const std::function<void(std::span<const double>, bool regularized)>& fn) const;

  CnnParameters zeros_like() const;
  void set_zero();
  std::size_t size() const;
};

class CnnModel {
 public:
  CnnModel() = default;

  /// Filters and softmax weights ~ U[-init_range, init_range] from
  /// config.seed; all biases start at zero.
  CnnModel(CnnConfig config, std::size_t embedding_dim, std::size_t pad_length);

  /// Wraps existing parameters; throws InvalidArgument on a shape mismatch.
  CnnModel(CnnConfig config, std::size_t embedding_dim, std::size_t pad_length,
           CnnParameters parameters);

  const CnnConfig& config() const { return config_; }
  std::size_t embedding_dim() const { return embedding_dim_; }
  std::size_t pad_length() const { return pad_length_; }
  std::size_t feature_count() const { return config_.feature_count(); }

  CnnParameters& parameters() { return params_; }
  const CnnParameters& parameters() const { return params_; }

 private:
  CnnConfig config_;
  std::size_t embedding_dim_ = 0;
  std::size_t pad_length_ = 0;
  CnnParameters params_;
};

inline std::size_t feature_map_length(std::size_t k, std::size_t m, std::size_t stride) {
  return (k - m) / stride + 1;
}

/// One filter's response c_p = ReLU(F . X[p*s .. p*s+m-1] + b) at every
/// window position, and its max-over-time value.
struct FeatureMap {
  std::vector<double> values;
  double pooled = 0.0;
  std::size_t argmax = 0;  // first position attaining the maximum
};

FeatureMap compute_feature_map(const FilterBank& bank, std::size_t filter, const TweetMatrix& tm,
                               std::size_t stride);

}  // namespace wecnn::cnn
