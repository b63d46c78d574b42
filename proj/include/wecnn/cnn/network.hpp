#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wecnn/cnn/model.hpp"
#include "wecnn/common.hpp"

namespace wecnn::cnn {

enum class Mode { train, infer };

/// Intermediate values of one forward pass, kept for backward().
struct ForwardCache {
  std::vector<double> pooled;            // max-pooled ReLU outputs
  std::vector<std::size_t> argmax_row;   // first row of the winning window
  std::vector<double> dropout_scale;     // 0 or 1/keep in train mode, 1 at inference
  std::vector<double> hidden;            // pooled * dropout_scale
  std::array<double, kClassCount> scores{};
  std::array<double, kClassCount> probs{};
};

/// Convolution + ReLU, max-over-time pooling, dropout (train mode only,
/// inverted scaling) and softmax. Throws InvalidArgument when the matrix
/// width or length does not match the model.
void forward(const CnnModel& model, const TweetMatrix& tm, Mode mode, std::uint64_t dropout_seed,
             ForwardCache& cache);
ForwardCache forward(const CnnModel& model, const TweetMatrix& tm, Mode mode,
                     std::uint64_t dropout_seed = 0);

std::array<double, kClassCount> predict_proba(const CnnModel& model, const TweetMatrix& tm);

/// Positive when P(positive) >= P(negative).
Label predict(const CnnModel& model, const TweetMatrix& tm);

/// -log p(label) for a cached forward pass.
double cross_entropy(const ForwardCache& cache, Label label);

/// Adds weight * d(cross-entropy)/d(theta) into `grads`. The max-pool
/// gradient goes only to the recorded argmax window.
void backward(const CnnModel& model, const TweetMatrix& tm, const ForwardCache& cache, Label label,
              CnnParameters& grads, double weight = 1.0);

/// (lambda / 2) * squared norm of the filter and softmax weights.
double l2_penalty(const CnnParameters& params, double lambda);
void add_l2_gradient(const CnnParameters& params, double lambda, CnnParameters& grads);

}  // namespace wecnn::cnn
