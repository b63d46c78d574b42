#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wecnn::cnn {

enum class OptimizerKind { adadelta, sgd };

/// Convolutional classifier hyperparameters. Filter sizes, filters per size,
/// stride and dropout follow Kim's sentence CNN; the remaining values are
/// this toolkit's own choices.
struct CnnConfig {
  std::vector<std::size_t> filter_sizes{1, 2, 3};
  std::size_t filters_per_size = 200;
  std::size_t stride = 1;
  /// Probability that a pooled feature stays active during training. At
  /// inference every feature is active.
  double keep_probability = 0.5;
  double l2_lambda = 1e-4;
  std::size_t batch_size = 50;
  std::size_t max_epochs = 25;
  OptimizerKind optimizer = OptimizerKind::adadelta;
  double adadelta_rho = 0.95;
  double adadelta_epsilon = 1e-6;
  double sgd_learning_rate = 0.01;
  double init_range = 0.05;  // weights ~ U[-init_range, init_range]
  std::uint64_t seed = 1;

  std::size_t max_filter_size() const;
  std::size_t feature_count() const { return filter_sizes.size() * filters_per_size; }

  /// Throws InvalidArgument when a field is out of range or a filter is
  /// wider than `pad_length`.
  void validate(std::size_t pad_length) const;
};

}  // namespace wecnn::cnn
