#include "wecnn/cnn/model.hpp"

#include <algorithm>
#include <limits>

#include "wecnn/common.hpp"
#include "wecnn/detail/dot.hpp"
#include "wecnn/random.hpp"

namespace wecnn::cnn {

std::size_t CnnConfig::max_filter_size() const {
  return filter_sizes.empty() ? 0 : *std::max_element(filter_sizes.begin(), filter_sizes.end());
}

void CnnConfig::validate(std::size_t pad_length) const {
  if (filter_sizes.empty()) throw InvalidArgument("at least one filter size is required");
  for (auto m : filter_sizes) {
    if (m < 1) throw InvalidArgument("filter sizes must be >= 1");
    if (m > pad_length) {
      throw InvalidArgument("filter size " + std::to_string(m) + " exceeds pad length " +
                            std::to_string(pad_length));
    }
  }
  if (filters_per_size < 1) throw InvalidArgument("filters per size must be >= 1");
  if (stride < 1) throw InvalidArgument("stride must be >= 1");
  if (!(keep_probability > 0.0 && keep_probability <= 1.0)) {
    throw InvalidArgument("dropout keep probability must be in (0, 1]");
  }
  if (l2_lambda < 0.0) throw InvalidArgument("l2 strength must be >= 0");
  if (batch_size < 1) throw InvalidArgument("batch size must be >= 1");
  if (!(adadelta_rho > 0.0 && adadelta_rho < 1.0)) throw InvalidArgument("adadelta rho must be in (0, 1)");
  if (!(adadelta_epsilon > 0.0)) throw InvalidArgument("adadelta epsilon must be > 0");
  if (!(sgd_learning_rate > 0.0)) throw InvalidArgument("sgd learning rate must be > 0");
}

TweetMatrix build_tweet_matrix(std::span<const std::string> tokens,
                               const embeddings::EmbeddingLookup& embeddings,
                               std::size_t pad_length) {
  if (pad_length < 1) throw InvalidArgument("pad length must be >= 1");
  TweetMatrix tm;
  tm.length = pad_length;
  tm.width = embeddings.dimension();
  tm.true_length = std::min(tokens.size(), pad_length);
  tm.values.assign(tm.length * tm.width, 0.0);
  for (std::size_t i = 0; i < tm.true_length; ++i) {
    embeddings.vector_for(tokens[i], std::span<double>(tm.values.data() + i * tm.width, tm.width));
  }
  return tm;
}

std::vector<TweetMatrix> build_tweet_matrices(std::span<const std::vector<std::string>> tweets,
                                              const embeddings::EmbeddingLookup& embeddings,
                                              std::size_t pad_length) {
  std::vector<TweetMatrix> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) out.push_back(build_tweet_matrix(t, embeddings, pad_length));
  return out;
}

void CnnParameters::for_each_tensor(
    const std::function<void(std::span<double>, bool regularized)>& fn) {
  for (auto& bank : banks) {
    fn(bank.weights, true);
    fn(bank.bias, false);
  }
  fn(softmax_weights, true);
  fn(softmax_bias, false);
}

void CnnParameters::for_each_tensor(
    const std::function<void(std::span<const double>, bool regularized)>& fn) const {
  for (const auto& bank : banks) {
    fn(bank.weights, true);
    fn(bank.bias, false);
  }
  fn(softmax_weights, true);
  fn(softmax_bias, false);
}

CnnParameters CnnParameters::zeros_like() const {
  CnnParameters z = *this;
  z.set_zero();
  return z;
}

void CnnParameters::set_zero() {
  for_each_tensor([](std::span<double> t, bool) { std::fill(t.begin(), t.end(), 0.0); });
}

std::size_t CnnParameters::size() const {
  std::size_t n = 0;
  for_each_tensor([&](std::span<const double> t, bool) { n += t.size(); });
  return n;
}

namespace {

CnnParameters shaped_parameters(const CnnConfig& config, std::size_t n) {
  CnnParameters p;
  for (auto m : config.filter_sizes) {
    FilterBank bank;
    bank.width = m;
    bank.count = config.filters_per_size;
    bank.weights.assign(bank.count * m * n, 0.0);
    bank.bias.assign(bank.count, 0.0);
    p.banks.push_back(std::move(bank));
  }
  p.softmax_weights.assign(config.feature_count() * kClassCount, 0.0);
  p.softmax_bias.assign(kClassCount, 0.0);
  return p;
}

}  // namespace

CnnModel::CnnModel(CnnConfig config, std::size_t embedding_dim, std::size_t pad_length)
    : config_(std::move(config)), embedding_dim_(embedding_dim), pad_length_(pad_length) {
  config_.validate(pad_length_);
  if (embedding_dim_ < 1) throw InvalidArgument("embedding dimension must be >= 1");
  params_ = shaped_parameters(config_, embedding_dim_);
  Rng rng(mix_seed(config_.seed, 0xC22));
  const double r = config_.init_range;
  params_.for_each_tensor([&](std::span<double> t, bool regularized) {
    if (!regularized) return;
    for (auto& w : t) w = rng.uniform(-r, r);
  });
}

CnnModel::CnnModel(CnnConfig config, std::size_t embedding_dim, std::size_t pad_length,
                   CnnParameters parameters)
    : config_(std::move(config)), embedding_dim_(embedding_dim), pad_length_(pad_length) {
  config_.validate(pad_length_);
  const CnnParameters expected = shaped_parameters(config_, embedding_dim_);
  bool ok = parameters.banks.size() == expected.banks.size() &&
            parameters.softmax_weights.size() == expected.softmax_weights.size() &&
            parameters.softmax_bias.size() == expected.softmax_bias.size();
  for (std::size_t b = 0; ok && b < expected.banks.size(); ++b) {
    const auto& have = parameters.banks[b];
    const auto& want = expected.banks[b];
    ok = have.width == want.width && have.count == want.count &&
         have.weights.size() == want.weights.size() && have.bias.size() == want.bias.size();
  }
  if (!ok) throw InvalidArgument("parameter shapes do not match the model configuration");
  params_ = std::move(parameters);
}

FeatureMap compute_feature_map(const FilterBank& bank, std::size_t filter, const TweetMatrix& tm,
                               std::size_t stride) {
  if (bank.width > tm.length) throw InvalidArgument("filter wider than tweet matrix");
  const std::size_t n = tm.width;
  const auto w = bank.filter(filter, n);
  FeatureMap fm;
  const std::size_t len = feature_map_length(tm.length, bank.width, stride);
  fm.values.resize(len);
  for (std::size_t p = 0; p < len; ++p) {
    const double* x = tm.values.data() + p * stride * n;
    fm.values[p] = std::max(0.0, bank.bias[filter] + detail::dot(w.data(), x, w.size()));
  }
  const auto it = std::max_element(fm.values.begin(), fm.values.end());
  fm.pooled = *it;
  fm.argmax = static_cast<std::size_t>(it - fm.values.begin());
  return fm;
}

}  // namespace wecnn::cnn
