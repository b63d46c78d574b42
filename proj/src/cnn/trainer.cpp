#include "wecnn/cnn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wecnn/random.hpp"

namespace wecnn::cnn {

Optimizer::Optimizer(const CnnConfig& config, const CnnParameters& shape)
    : kind_(config.optimizer),
      rho_(config.adadelta_rho),
      epsilon_(config.adadelta_epsilon),
      learning_rate_(config.sgd_learning_rate),
      grad_sq_(shape.zeros_like()),
      delta_sq_(shape.zeros_like()) {}

void Optimizer::step(CnnParameters& params, const CnnParameters& grads) {
  std::vector<std::span<const double>> g;
  grads.for_each_tensor([&](std::span<const double> t, bool) { g.push_back(t); });
  std::vector<std::span<double>> eg, ed;
  grad_sq_.for_each_tensor([&](std::span<double> t, bool) { eg.push_back(t); });
  delta_sq_.for_each_tensor([&](std::span<double> t, bool) { ed.push_back(t); });

  std::size_t ti = 0;
  params.for_each_tensor([&](std::span<double> w, bool) {
    const auto gt = g[ti];
    if (kind_ == OptimizerKind::sgd) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate_ * gt[i];
    } else {
      auto egt = eg[ti];
      auto edt = ed[ti];
      for (std::size_t i = 0; i < w.size(); ++i) {
        egt[i] = rho_ * egt[i] + (1.0 - rho_) * gt[i] * gt[i];
        const double delta = -std::sqrt(edt[i] + epsilon_) / std::sqrt(egt[i] + epsilon_) * gt[i];
        edt[i] = rho_ * edt[i] + (1.0 - rho_) * delta * delta;
        w[i] += delta;
      }
    }
    ++ti;
  });
}

double accuracy(const CnnModel& model, std::span<const TweetMatrix> xs, std::span<const Label> ys) {
  if (xs.empty()) return 0.0;
  ForwardCache cache;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    forward(model, xs[i], Mode::infer, 0, cache);
    correct += label_from_bool(cache.probs[1] >= cache.probs[0]) == ys[i];
  }
  return static_cast<double>(correct) / static_cast<double>(xs.size());
}

std::size_t pad_length_for(std::span<const std::vector<std::string>> train_tweets,
                           const CnnConfig& config) {
  std::size_t k = 1;
  for (const auto& t : train_tweets) k = std::max(k, t.size());
  return std::max(k, config.max_filter_size());
}

TrainingResult train(std::span<const TweetMatrix> train_x, std::span<const Label> train_y,
                     std::span<const TweetMatrix> validation_x,
                     std::span<const Label> validation_y, std::size_t embedding_dim,
                     std::size_t pad_length, const CnnConfig& config) {
  if (train_x.size() != train_y.size() || validation_x.size() != validation_y.size()) {
    throw InvalidArgument("feature/label count mismatch");
  }
  if (train_x.empty() || validation_x.empty()) {
    throw InvalidArgument("training and validation sets must be non-empty");
  }

  TrainingResult result{CnnModel(config, embedding_dim, pad_length), {}, 0, {}};
  const auto first_label = validation_y.front();
  if (std::all_of(validation_y.begin(), validation_y.end(),
                  [&](Label l) { return l == first_label; })) {
    result.warnings.push_back("validation set contains a single class");
  }
  if (config.max_epochs == 0) return result;

  CnnModel& model = result.model;
  CnnParameters grads = model.parameters().zeros_like();
  CnnParameters best = model.parameters();
  Optimizer optimizer(config, model.parameters());
  Rng order_rng(mix_seed(config.seed, 0x5EED));
  std::vector<std::size_t> order(train_x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  ForwardCache cache;
  double best_accuracy = -1.0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double weight = 1.0 / static_cast<double>(end - start);
      grads.set_zero();
      double batch_loss = 0.0;
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t idx = order[b];
        forward(model, train_x[idx], Mode::train, mix_seed(config.seed, epoch, idx), cache);
        batch_loss += weight * cross_entropy(cache, train_y[idx]);
        correct += label_from_bool(cache.probs[1] >= cache.probs[0]) == train_y[idx];
        backward(model, train_x[idx], cache, train_y[idx], grads, weight);
      }
      batch_loss += l2_penalty(model.parameters(), config.l2_lambda);
      add_l2_gradient(model.parameters(), config.l2_lambda, grads);
      optimizer.step(model.parameters(), grads);
      loss_sum += batch_loss;
      ++batches;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(batches);
    rec.train_accuracy = static_cast<double>(correct) / static_cast<double>(order.size());
    rec.validation_accuracy = accuracy(model, validation_x, validation_y);
    result.trace.push_back(rec);

    if (rec.validation_accuracy > best_accuracy) {
      best_accuracy = rec.validation_accuracy;
      best = model.parameters();
      result.best_epoch = epoch;
    } else if (rec.validation_accuracy < best_accuracy) {
      break;
    }
  }
  model.parameters() = std::move(best);
  return result;
}

}  // namespace wecnn::cnn
