#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "wecnn/common.hpp"
#include "wecnn/embeddings/embedding_io.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"
#include "wecnn/embeddings/skipgram.hpp"
#include "wecnn/random.hpp"

using namespace wecnn;
using namespace wecnn::embeddings;

namespace {

using Corpus = std::vector<std::vector<std::string>>;

// Sentences drawn from either topic "a" or topic "b", 20 words each.
Corpus two_topic_corpus(std::size_t docs, std::uint64_t seed) {
  Rng rng(seed);
  Corpus out;
  for (std::size_t d = 0; d < docs; ++d) {
    const char* topic = d % 2 == 0 ? "a" : "b";
    std::vector<std::string> s;
    for (int i = 0; i < 12; ++i) s.push_back(topic + std::to_string(rng.below(20)));
    out.push_back(std::move(s));
  }
  return out;
}

EmbeddingConfig small_config() {
  EmbeddingConfig cfg;
  cfg.window = 3;
  cfg.dimension = 16;
  cfg.min_frequency = 1;
  cfg.iterations = 3;
  cfg.negative_samples = 5;
  cfg.seed = 11;
  return cfg;
}

double mean_cosine(const EmbeddingMatrix& m, const char* p, const char* q) {
  double sum = 0.0;
  int n = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      if (p == q && i == j) continue;
      const auto a = m.lookup(p + std::to_string(i));
      const auto b = m.lookup(q + std::to_string(j));
      if (!a || !b) continue;
      sum += cosine_similarity(*a, *b);
      ++n;
    }
  }
  return sum / n;
}

}  // namespace

TEST_CASE("noise distribution follows the smoothed unigram law") {
  const std::vector<std::uint64_t> counts{1, 10, 100, 1000};
  NoiseDistribution noise(counts, 0.75);
  double z = 0.0;
  for (auto c : counts) z += std::pow(static_cast<double>(c), 0.75);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    CHECK(noise.probability(i) == doctest::Approx(std::pow(counts[i], 0.75) / z).epsilon(1e-12));
  }
  Rng rng(5);
  const std::size_t draws = 1'000'000;
  std::vector<std::size_t> hits(counts.size(), 0);
  for (std::size_t k = 0; k < draws; ++k) ++hits[noise.sample(rng)];
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = noise.probability(i);
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(static_cast<double>(hits[i]) / draws - p) < 3 * se);
  }
}

TEST_CASE("skip-gram separates co-occurring words from the other topic") {
  const auto corpus = two_topic_corpus(2000, 1);
  const auto m = train_embeddings(corpus, small_config());
  const double within = (mean_cosine(m, "a", "a") + mean_cosine(m, "b", "b")) / 2;
  const double across = mean_cosine(m, "a", "b");
  CHECK(within > across + 0.1);
}

TEST_CASE("trained matrix shape and vocabulary filter") {
  Corpus corpus{{"x", "y", "x", "z"}, {"x", "y", "rare"}};
  auto cfg = small_config();
  cfg.min_frequency = 2;
  const auto m = train_embeddings(corpus, cfg);
  CHECK(m.rows() == 2);
  CHECK(m.dimension() == 16);
  CHECK(m.input_data().size() == 2 * 16);
  CHECK(m.lookup("x").has_value());
  CHECK_FALSE(m.lookup("rare").has_value());
  CHECK_FALSE(m.lookup("z").has_value());
  for (double v : m.input_data()) CHECK(std::isfinite(v));
}

TEST_CASE("training without usable tokens fails") {
  Corpus corpus{{"a"}, {"b"}};
  auto cfg = small_config();
  CHECK_THROWS_AS(train_embeddings(corpus, cfg), InvalidArgument);
  cfg.min_frequency = 5;
  Corpus few{{"a", "b"}};
  CHECK_THROWS_AS(train_embeddings(few, cfg), InvalidArgument);
}

TEST_CASE("config validation") {
  auto cfg = small_config();
  cfg.dimension = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.window = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("single-worker training is deterministic") {
  const auto corpus = two_topic_corpus(200, 2);
  const auto a = train_embeddings(corpus, small_config());
  const auto b = train_embeddings(corpus, small_config());
  CHECK(std::equal(a.input_data().begin(), a.input_data().end(), b.input_data().begin()));
  auto other = small_config();
  other.seed = 12;
  const auto c = train_embeddings(corpus, other);
  CHECK_FALSE(std::equal(a.input_data().begin(), a.input_data().end(), c.input_data().begin()));
}

TEST_CASE("training loss does not grow across iterations") {
  const auto corpus = two_topic_corpus(1000, 3);
  auto cfg = small_config();
  cfg.iterations = 5;
  SkipGramTrace trace;
  train_embeddings(corpus, cfg, &trace);
  REQUIRE(trace.iteration_loss.size() == 5);
  for (std::size_t i = 1; i < trace.iteration_loss.size(); ++i) {
    CHECK(trace.iteration_loss[i] <= trace.iteration_loss[i - 1] * 1.01);
  }
  CHECK(trace.iteration_loss.back() < trace.iteration_loss.front());
  for (auto pairs : trace.iteration_pairs) CHECK(pairs > 0);
}

TEST_CASE("multi-worker training still learns the topics") {
  const auto corpus = two_topic_corpus(2000, 4);
  auto cfg = small_config();
  cfg.workers = 3;
  const auto m = train_embeddings(corpus, cfg);
  CHECK(m.rows() == 40);
  CHECK(mean_cosine(m, "a", "a") > mean_cosine(m, "a", "b"));
}

TEST_CASE("OOV vectors stay inside mean +- stddev") {
  EmbeddingStats stats;
  stats.mean = {0.5, -1.0, 0.0};
  stats.stddev = {0.1, 0.0, 2.0};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto v = oov_vector(stats, "unseen", seed);
    REQUIRE(v.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(v[i] >= stats.mean[i] - stats.stddev[i]);
      CHECK(v[i] <= stats.mean[i] + stats.stddev[i]);
    }
    CHECK(v[1] == -1.0);
  }
  CHECK(oov_vector(stats, "t", 9) == oov_vector(stats, "t", 9));
  CHECK(oov_vector(stats, "t", 9) != oov_vector(stats, "u", 9));
}

TEST_CASE("embedding statistics and lookup") {
  const auto vocab = corpus::Vocabulary::from_ordered({{"p", 3}, {"q", 1}});
  EmbeddingConfig cfg;
  cfg.dimension = 2;
  EmbeddingMatrix m(vocab, {1.0, 2.0, 3.0, 2.0}, {}, cfg);
  const auto stats = EmbeddingStats::compute(m);
  CHECK(stats.mean == std::vector<double>{2.0, 2.0});
  CHECK(stats.stddev[0] == doctest::Approx(1.0));
  CHECK(stats.stddev[1] == 0.0);

  EmbeddingLookup lookup(m, 4);
  CHECK(lookup.vector_for("q") == std::vector<double>{3.0, 2.0});
  const auto oov = lookup.vector_for("zzz");
  CHECK(oov[0] >= 1.0);
  CHECK(oov[0] <= 3.0);
  CHECK(oov[1] == 2.0);
  CHECK(lookup.vector_for("zzz") == oov);

  CHECK_THROWS_AS(EmbeddingMatrix(vocab, {1.0, 2.0, 3.0}, {}, cfg), InvalidArgument);
  CHECK_THROWS_AS(EmbeddingMatrix(vocab, {1.0, 2.0, NAN, 2.0}, {}, cfg), InvalidArgument);
}

TEST_CASE("cosine similarity") {
  const std::vector<double> a{1, 0}, b{0, 1}, c{2, 0};
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
  CHECK(cosine_similarity(a, c) == doctest::Approx(1.0));
}

TEST_CASE("embedding text format round-trips bitwise") {
  const auto m = train_embeddings(two_topic_corpus(100, 5), small_config());
  std::stringstream buffer;
  write_embeddings(m, buffer);
  const auto text = buffer.str();
  const auto loaded = read_embeddings(buffer);
  CHECK(loaded.rows() == m.rows());
  CHECK(loaded.dimension() == m.dimension());
  for (std::size_t i = 0; i < m.rows(); ++i) CHECK(loaded.vocab().token(i) == m.vocab().token(i));
  CHECK(std::equal(m.input_data().begin(), m.input_data().end(), loaded.input_data().begin()));
  std::stringstream again;
  write_embeddings(loaded, again);
  CHECK(again.str() == text);
}

TEST_CASE("malformed embedding files are rejected") {
  std::istringstream short_row("3 2\na 1 2\nb 1 2 3\nc 1 1\n");
  CHECK_THROWS_AS(read_embeddings(short_row), ParseError);
  std::istringstream dup("2 1\na 1\na 2\n");
  CHECK_THROWS_AS(read_embeddings(dup), ParseError);
  std::istringstream bad_header("x 2\n");
  CHECK_THROWS_AS(read_embeddings(bad_header), ParseError);
  std::istringstream bad_number("1 2\na 1 zz\n");
  CHECK_THROWS_AS(read_embeddings(bad_number), ParseError);
  std::istringstream missing_rows("3 1\na 1\n");
  CHECK_THROWS_AS(read_embeddings(missing_rows), ParseError);
  CHECK_THROWS_AS(load_embeddings("/nonexistent/emb.vec"), IoError);
}
