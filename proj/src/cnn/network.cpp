#include "wecnn/cnn/network.hpp"

#include <algorithm>
#include <cmath>

#include "wecnn/detail/dot.hpp"
#include "wecnn/random.hpp"

namespace wecnn::cnn {

namespace {

void check_input(const CnnModel& model, const TweetMatrix& tm) {
  if (tm.width != model.embedding_dim()) {
    throw InvalidArgument("tweet matrix width " + std::to_string(tm.width) +
                          " does not match embedding dimension " +
                          std::to_string(model.embedding_dim()));
  }
  if (tm.length < model.config().max_filter_size()) {
    throw InvalidArgument("tweet matrix shorter than the widest filter");
  }
  if (tm.values.size() != tm.length * tm.width) throw InvalidArgument("tweet matrix data size mismatch");
}

double log_sum_exp(const std::array<double, kClassCount>& s) {
  const double m = std::max(s[0], s[1]);
  return m + std::log(std::exp(s[0] - m) + std::exp(s[1] - m));
}

}  // namespace

void forward(const CnnModel& model, const TweetMatrix& tm, Mode mode, std::uint64_t dropout_seed,
             ForwardCache& cache) {
  check_input(model, tm);
  const auto& cfg = model.config();
  const auto& params = model.parameters();
  const std::size_t n = tm.width;
  const std::size_t features = model.feature_count();
  const std::size_t stride = cfg.stride;

  cache.pooled.resize(features);
  cache.argmax_row.resize(features);
  cache.dropout_scale.resize(features);
  cache.hidden.resize(features);

  std::size_t j = 0;
  for (const auto& bank : params.banks) {
    const std::size_t span_len = bank.width * n;
    const std::size_t positions = feature_map_length(tm.length, bank.width, stride);
    for (std::size_t f = 0; f < bank.count; ++f, ++j) {
      const double* w = bank.weights.data() + f * span_len;
      double best = -1.0;
      std::size_t best_row = 0;
      for (std::size_t p = 0; p < positions; ++p) {
        const std::size_t row = p * stride;
        const double r =
            std::max(0.0, bank.bias[f] + detail::dot(w, tm.values.data() + row * n, span_len));
        if (r > best) {
          best = r;
          best_row = row;
        }
      }
      cache.pooled[j] = best;
      cache.argmax_row[j] = best_row;
    }
  }

  if (mode == Mode::train && cfg.keep_probability < 1.0) {
    Rng rng(dropout_seed);
    const double inv_keep = 1.0 / cfg.keep_probability;
    for (auto& s : cache.dropout_scale) s = rng.uniform() < cfg.keep_probability ? inv_keep : 0.0;
  } else {
    std::fill(cache.dropout_scale.begin(), cache.dropout_scale.end(), 1.0);
  }
  for (std::size_t i = 0; i < features; ++i) cache.hidden[i] = cache.pooled[i] * cache.dropout_scale[i];

  for (std::size_t c = 0; c < kClassCount; ++c) cache.scores[c] = params.softmax_bias[c];
  for (std::size_t i = 0; i < features; ++i) {
    const double h = cache.hidden[i];
    if (h == 0.0) continue;
    for (std::size_t c = 0; c < kClassCount; ++c) {
      cache.scores[c] += h * params.softmax_weights[i * kClassCount + c];
    }
  }
  const double lse = log_sum_exp(cache.scores);
  for (std::size_t c = 0; c < kClassCount; ++c) cache.probs[c] = std::exp(cache.scores[c] - lse);
  // Renormalize so the pair sums to one up to a single rounding.
  const double total = cache.probs[0] + cache.probs[1];
  for (auto& p : cache.probs) p /= total;
}

ForwardCache forward(const CnnModel& model, const TweetMatrix& tm, Mode mode,
                     std::uint64_t dropout_seed) {
  ForwardCache cache;
  forward(model, tm, mode, dropout_seed, cache);
  return cache;
}

std::array<double, kClassCount> predict_proba(const CnnModel& model, const TweetMatrix& tm) {
  return forward(model, tm, Mode::infer).probs;
}

Label predict(const CnnModel& model, const TweetMatrix& tm) {
  const auto p = predict_proba(model, tm);
  return label_from_bool(p[1] >= p[0]);
}

double cross_entropy(const ForwardCache& cache, Label label) {
  return log_sum_exp(cache.scores) - cache.scores[static_cast<std::size_t>(to_int(label))];
}

void backward(const CnnModel& model, const TweetMatrix& tm, const ForwardCache& cache, Label label,
              CnnParameters& grads, double weight) {
  const auto& params = model.parameters();
  const std::size_t n = tm.width;
  const std::size_t y = static_cast<std::size_t>(to_int(label));

  std::array<double, kClassCount> d{};
  for (std::size_t c = 0; c < kClassCount; ++c) {
    d[c] = weight * (cache.probs[c] - (c == y ? 1.0 : 0.0));
    grads.softmax_bias[c] += d[c];
  }

  std::size_t j = 0;
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    const auto& bank = params.banks[b];
    auto& gbank = grads.banks[b];
    const std::size_t span_len = bank.width * n;
    for (std::size_t f = 0; f < bank.count; ++f, ++j) {
      const double h = cache.hidden[j];
      double dh = 0.0;
      for (std::size_t c = 0; c < kClassCount; ++c) {
        grads.softmax_weights[j * kClassCount + c] += h * d[c];
        dh += params.softmax_weights[j * kClassCount + c] * d[c];
      }
      // ReLU is inactive (and the pooled value zero) unless the max is positive.
      const double dz = dh * cache.dropout_scale[j];
      if (cache.pooled[j] <= 0.0 || dz == 0.0) continue;
      gbank.bias[f] += dz;
      detail::axpy(dz, tm.values.data() + cache.argmax_row[j] * n,
                   gbank.weights.data() + f * span_len, span_len);
    }
  }
}

double l2_penalty(const CnnParameters& params, double lambda) {
  double sq = 0.0;
  params.for_each_tensor([&](std::span<const double> t, bool regularized) {
    if (!regularized) return;
    for (double w : t) sq += w * w;
  });
  return 0.5 * lambda * sq;
}

void add_l2_gradient(const CnnParameters& params, double lambda, CnnParameters& grads) {
  if (lambda == 0.0) return;
  std::vector<std::span<const double>> src;
  params.for_each_tensor([&](std::span<const double> t, bool regularized) {
    src.push_back(regularized ? t : std::span<const double>{});
  });
  std::size_t i = 0;
  grads.for_each_tensor([&](std::span<double> g, bool) {
    const auto w = src[i++];
    for (std::size_t k = 0; k < w.size(); ++k) g[k] += lambda * w[k];
  });
}

}  // namespace wecnn::cnn
