#pragma once

#include <span>
#include <string>
#include <vector>

#include "wecnn/cnn/model.hpp"
#include "wecnn/cnn/network.hpp"

namespace wecnn::cnn {

/// Adadelta (or plain SGD) state for one parameter set.
class Optimizer {
 public:
  Optimizer(const CnnConfig& config, const CnnParameters& shape);
  void step(CnnParameters& params, const CnnParameters& grads);

 private:
  OptimizerKind kind_;
  double rho_;
  double epsilon_;
  double learning_rate_;
  CnnParameters grad_sq_;
  CnnParameters delta_sq_;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;      // mean mini-batch objective
  double train_accuracy = 0.0;  // on the dropout-mode forward passes
  double validation_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainingResult {
  CnnModel model;
  std::vector<EpochRecord> trace;
  std::size_t best_epoch = 0;  // 0 when no epoch ran
  std::vector<std::string> warnings;
};

/// Mini-batch training with early stopping: after every epoch the validation
/// accuracy is measured and training stops as soon as it falls below the best
/// value seen so far. The returned model holds the best epoch's weights.
TrainingResult train(std::span<const TweetMatrix> train_x, std::span<const Label> train_y,
                     std::span<const TweetMatrix> validation_x,
                     std::span<const Label> validation_y, std::size_t embedding_dim,
                     std::size_t pad_length, const CnnConfig& config);

/// Longest tweet in the training set, raised to the widest filter if needed.
std::size_t pad_length_for(std::span<const std::vector<std::string>> train_tweets,
                           const CnnConfig& config);

double accuracy(const CnnModel& model, std::span<const TweetMatrix> xs, std::span<const Label> ys);

}  // namespace wecnn::cnn
