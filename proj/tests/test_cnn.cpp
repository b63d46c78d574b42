#include "doctest.h"

#include <zlib.h>

#include <cmath>
#include <sstream>

#include "gradcheck.hpp"
#include "wecnn/cnn/model_io.hpp"
#include "wecnn/cnn/trainer.hpp"
#include "wecnn/common.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"

using namespace wecnn;
using namespace wecnn::cnn;

namespace {

TweetMatrix matrix(std::size_t k, std::size_t n, std::vector<double> values) {
  TweetMatrix tm;
  tm.length = k;
  tm.width = n;
  tm.true_length = k;
  tm.values = std::move(values);
  return tm;
}

struct Separable {
  std::vector<TweetMatrix> x;
  std::vector<Label> y;
};

// Positive tweets carry a (1, 1, 0, 0) word, negatives a (0, 0, 1, 1) word;
// every other word is small noise.
Separable separable(std::size_t count, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Separable s;
  for (std::size_t i = 0; i < count; ++i) {
    const bool pos = rng.bernoulli(0.5);
    std::vector<double> v(k * 4);
    for (auto& e : v) e = rng.uniform(-0.1, 0.1);
    const std::size_t at = static_cast<std::size_t>(rng.below(k));
    v[at * 4 + (pos ? 0 : 2)] = 1.0;
    v[at * 4 + (pos ? 1 : 3)] = 1.0;
    s.x.push_back(matrix(k, 4, std::move(v)));
    s.y.push_back(pos ? Label::positive : Label::negative);
  }
  return s;
}

CnnConfig small_config() {
  CnnConfig cfg;
  cfg.filters_per_size = 8;
  cfg.max_epochs = 10;
  cfg.batch_size = 10;
  cfg.seed = 3;
  return cfg;
}

std::string serialize(const CnnModel& model) {
  std::ostringstream out;
  write_model(model, out);
  return out.str();
}

std::vector<double> flat(const CnnParameters& p) {
  std::vector<double> out;
  p.for_each_tensor([&](std::span<const double> t, bool) { out.insert(out.end(), t.begin(), t.end()); });
  return out;
}

void put_le32(std::string& bytes, std::size_t offset, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes[offset + i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}

void reseal(std::string& bytes) {
  const auto* body = reinterpret_cast<const unsigned char*>(bytes.data()) + 4;
  const auto crc = crc32(0L, body, static_cast<uInt>(bytes.size() - 8));
  put_le32(bytes, bytes.size() - 4, static_cast<std::uint32_t>(crc));
}

}  // namespace

TEST_CASE("feature map of a hand-traced example") {
  FilterBank bank;
  bank.width = 1;
  bank.count = 1;
  bank.weights = {1.0, 1.0};
  bank.bias = {0.0};
  const auto tm = matrix(3, 2, {1, 2, 3, 4, 0, -1});
  const auto fm = compute_feature_map(bank, 0, tm, 1);
  CHECK(fm.values == std::vector<double>{3.0, 7.0, 0.0});
  CHECK(fm.pooled == 7.0);
  CHECK(fm.argmax == 1);
}

TEST_CASE("feature map length") {
  CHECK(feature_map_length(30, 3, 1) == 28);
  CHECK(feature_map_length(5, 5, 1) == 1);
  CHECK(feature_map_length(7, 2, 2) == 3);
  FilterBank bank;
  bank.width = 3;
  bank.count = 1;
  bank.weights.assign(3, 1.0);
  bank.bias = {0.0};
  CHECK(compute_feature_map(bank, 0, matrix(30, 1, std::vector<double>(30, 1.0)), 1).values.size() == 28);
  CHECK_THROWS_AS(compute_feature_map(bank, 0, matrix(2, 1, {1, 1}), 1), InvalidArgument);
}

TEST_CASE("softmax output is a distribution") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    CnnConfig cfg = small_config();
    cfg.init_range = 2.0;
    cfg.seed = trial;
    CnnModel model(cfg, 3, 5);
    const auto tm = testing::random_tweet(rng, 5, 3);
    const auto p = predict_proba(model, tm);
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
    CHECK((predict(model, tm) == Label::positive) == (p[1] >= p[0]));
  }
}

TEST_CASE("gradients match central finite differences") {
  std::size_t compared = 0, skipped = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto stats = testing::random_gradient_check(seed);
    compared += stats.compared;
    skipped += stats.skipped;
    worst = std::max(worst, stats.max_relative_error);
  }
  CHECK(worst < 1e-4);
  CHECK(compared > 20 * skipped);
}

TEST_CASE("dropped features receive no gradient") {
  CnnConfig cfg = small_config();
  cfg.filter_sizes = {1};
  cfg.filters_per_size = 16;
  cfg.keep_probability = 0.5;
  cfg.l2_lambda = 0.0;
  CnnModel model(cfg, 2, 4);
  Rng rng(2);
  const auto tm = testing::random_tweet(rng, 4, 2);
  const auto cache = forward(model, tm, Mode::train, 77);
  auto grads = model.parameters().zeros_like();
  backward(model, tm, cache, Label::positive, grads);
  std::size_t dropped = 0;
  for (std::size_t f = 0; f < cache.dropout_scale.size(); ++f) {
    if (cache.dropout_scale[f] != 0.0) {
      CHECK(cache.dropout_scale[f] == 2.0);
      continue;
    }
    ++dropped;
    CHECK(grads.banks[0].bias[f] == 0.0);
    for (std::size_t j = 0; j < 2; ++j) CHECK(grads.banks[0].weights[f * 2 + j] == 0.0);
    for (std::size_t c = 0; c < kClassCount; ++c) {
      CHECK(grads.softmax_weights[f * kClassCount + c] == 0.0);
    }
  }
  CHECK(dropped > 0);
}

TEST_CASE("inference ignores dropout and is deterministic") {
  CnnModel model(small_config(), 3, 6);
  Rng rng(4);
  const auto tm = testing::random_tweet(rng, 6, 3);
  const auto a = forward(model, tm, Mode::infer, 1);
  const auto b = forward(model, tm, Mode::infer, 2);
  CHECK(a.probs == b.probs);
  for (double s : a.dropout_scale) CHECK(s == 1.0);
  CHECK(a.hidden == a.pooled);
}

TEST_CASE("extra padding does not change predictions") {
  const auto vocab = corpus::Vocabulary::from_ordered({{"a", 1}, {"b", 1}, {"c", 1}});
  embeddings::EmbeddingConfig ecfg;
  ecfg.dimension = 2;
  embeddings::EmbeddingMatrix emb(vocab, {0.5, -1.0, 1.0, 0.3, -0.2, 0.8}, {}, ecfg);
  embeddings::EmbeddingLookup lookup(emb, 1);
  const std::vector<std::string> tokens{"a", "c", "b"};
  auto cfg = small_config();
  cfg.filter_sizes = {1, 2, 3};
  const std::size_t k = tokens.size() + 3;
  CnnModel short_model(cfg, 2, k);
  CnnModel long_model(cfg, 2, k + 1, short_model.parameters());
  const auto p_short = predict_proba(short_model, build_tweet_matrix(tokens, lookup, k));
  const auto p_long = predict_proba(long_model, build_tweet_matrix(tokens, lookup, k + 1));
  CHECK(p_short == p_long);
}

TEST_CASE("tweet matrices pad and truncate") {
  const auto vocab = corpus::Vocabulary::from_ordered({{"a", 1}});
  embeddings::EmbeddingConfig ecfg;
  ecfg.dimension = 2;
  embeddings::EmbeddingMatrix emb(vocab, {1.0, 2.0}, {}, ecfg);
  embeddings::EmbeddingLookup lookup(emb, 1);
  const std::vector<std::string> tokens{"a", "a"};
  const auto padded = build_tweet_matrix(tokens, lookup, 3);
  CHECK(padded.values == std::vector<double>{1, 2, 1, 2, 0, 0});
  CHECK(padded.true_length == 2);
  const auto cut = build_tweet_matrix(tokens, lookup, 1);
  CHECK(cut.values == std::vector<double>{1, 2});
  CHECK_THROWS_AS(build_tweet_matrix(tokens, lookup, 0), InvalidArgument);
}

TEST_CASE("pad length covers the longest tweet and the widest filter") {
  const std::vector<std::vector<std::string>> tweets{{"a"}, {"a", "b", "c", "d"}};
  auto cfg = small_config();
  cfg.filter_sizes = {1, 2, 3};
  CHECK(pad_length_for(tweets, cfg) == 4);
  cfg.filter_sizes = {5};
  CHECK(pad_length_for(tweets, cfg) == 5);
}

TEST_CASE("model rejects mismatched inputs") {
  CnnModel model(small_config(), 3, 5);
  Rng rng(1);
  CHECK_THROWS_AS(forward(model, testing::random_tweet(rng, 5, 2), Mode::infer), InvalidArgument);
  CHECK_THROWS_AS(forward(model, testing::random_tweet(rng, 2, 3), Mode::infer), InvalidArgument);
  auto cfg = small_config();
  cfg.keep_probability = 0.0;
  CHECK_THROWS_AS(CnnModel(cfg, 3, 5), InvalidArgument);
  cfg = small_config();
  cfg.filter_sizes = {6};
  CHECK_THROWS_AS(CnnModel(cfg, 3, 5), InvalidArgument);
}

TEST_CASE("training fits separable data") {
  const auto train_set = separable(300, 6, 1);
  const auto val_set = separable(100, 6, 2);
  const auto result = train(train_set.x, train_set.y, val_set.x, val_set.y, 4, 6, small_config());
  CHECK(accuracy(result.model, train_set.x, train_set.y) >= 0.99);
  CHECK(result.best_epoch >= 1);
  CHECK_FALSE(result.trace.empty());
  for (const auto& rec : result.trace) CHECK(std::isfinite(rec.train_loss));
}

TEST_CASE("zero epochs return the initial model") {
  const auto data = separable(20, 6, 3);
  auto cfg = small_config();
  cfg.max_epochs = 0;
  const auto result = train(data.x, data.y, data.x, data.y, 4, 6, cfg);
  CHECK(result.trace.empty());
  CHECK(result.best_epoch == 0);
  CHECK(flat(result.model.parameters()) == flat(CnnModel(cfg, 4, 6).parameters()));
}

TEST_CASE("training is reproducible from its seed") {
  const auto data = separable(60, 6, 4);
  const auto val = separable(30, 6, 5);
  auto cfg = small_config();
  cfg.max_epochs = 3;
  const auto a = train(data.x, data.y, val.x, val.y, 4, 6, cfg);
  const auto b = train(data.x, data.y, val.x, val.y, 4, 6, cfg);
  CHECK(a.trace == b.trace);
  CHECK(serialize(a.model) == serialize(b.model));
  cfg.optimizer = OptimizerKind::sgd;
  cfg.sgd_learning_rate = 0.1;
  const auto c = train(data.x, data.y, val.x, val.y, 4, 6, cfg);
  CHECK(serialize(a.model) != serialize(c.model));
}

TEST_CASE("training input validation") {
  const auto data = separable(10, 6, 6);
  std::vector<Label> short_y(data.y.begin(), data.y.end() - 1);
  CHECK_THROWS_AS(train(data.x, short_y, data.x, data.y, 4, 6, small_config()), InvalidArgument);
  CHECK_THROWS_AS(train({}, {}, data.x, data.y, 4, 6, small_config()), InvalidArgument);
}

TEST_CASE("model file round-trips bitwise") {
  const auto data = separable(50, 6, 7);
  auto cfg = small_config();
  cfg.max_epochs = 2;
  const auto model = train(data.x, data.y, data.x, data.y, 4, 6, cfg).model;
  const auto bytes = serialize(model);
  std::istringstream in(bytes);
  const auto loaded = read_model(in);
  CHECK(serialize(loaded) == bytes);
  CHECK(loaded.config().filter_sizes == model.config().filter_sizes);
  CHECK(loaded.pad_length() == 6);
  for (const auto& x : data.x) CHECK(predict_proba(loaded, x) == predict_proba(model, x));
}

TEST_CASE("damaged model files are rejected") {
  auto cfg = small_config();
  cfg.filter_sizes = {1, 2};
  const auto bytes = serialize(CnnModel(cfg, 3, 4));

  SUBCASE("truncated") {
    std::istringstream in(bytes.substr(0, bytes.size() - 10));
    try {
      read_model(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()) == "unexpected end of model file");
    }
  }
  SUBCASE("bad magic") {
    std::istringstream in("XXXX" + bytes.substr(4));
    CHECK_THROWS_AS(read_model(in), ParseError);
  }
  SUBCASE("flipped payload bit") {
    auto damaged = bytes;
    damaged[60] ^= 0x01;
    std::istringstream in(damaged);
    CHECK_THROWS_WITH_AS(read_model(in), "model file checksum mismatch", ParseError);
  }
  SUBCASE("header declares more filters than the file holds") {
    auto cfg199 = cfg;
    cfg199.filters_per_size = 199;
    auto damaged = serialize(CnnModel(cfg199, 3, 4));
    // magic, n, k, size count, two sizes, then filters per size
    put_le32(damaged, 4 + 4 * 5, 200);
    std::istringstream stale(damaged);
    CHECK_THROWS_AS(read_model(stale), ParseError);
    reseal(damaged);
    std::istringstream sealed(damaged);
    CHECK_THROWS_AS(read_model(sealed), ParseError);
  }
  SUBCASE("empty stream") {
    std::istringstream in("");
    CHECK_THROWS_AS(read_model(in), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_model("/nonexistent/model.bin"), IoError);
  }
}
