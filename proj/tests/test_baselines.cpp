#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "wecnn/baselines/averaged_embedding.hpp"
#include "wecnn/baselines/features.hpp"
#include "wecnn/baselines/linear_svm.hpp"
#include "wecnn/baselines/random_classifier.hpp"
#include "wecnn/baselines/tfidf.hpp"
#include "wecnn/common.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"
#include "wecnn/random.hpp"

using namespace wecnn;
using namespace wecnn::baselines;

namespace {

using Docs = std::vector<std::vector<std::string>>;

FeatureSet dense_set(const std::vector<std::vector<double>>& rows) {
  FeatureSet fs;
  fs.dimension = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) fs.rows.push_back(SparseVector::from_dense(r));
  return fs;
}

struct Blobs {
  FeatureSet x;
  std::vector<Label> y;
};

Blobs blobs(std::size_t count, double separation, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  Blobs b;
  for (std::size_t i = 0; i < count; ++i) {
    const bool pos = i % 3 != 0;
    const double c = pos ? separation : -separation;
    rows.push_back({c + rng.uniform(-1, 1), c + rng.uniform(-1, 1), rng.uniform(-1, 1)});
    b.y.push_back(pos ? Label::positive : Label::negative);
  }
  b.x = dense_set(rows);
  return b;
}

SvmConfig tight(SvmLoss loss = SvmLoss::squared_hinge, double c = 1.0) {
  SvmConfig cfg;
  cfg.c = c;
  cfg.loss = loss;
  cfg.tolerance = 1e-12;
  cfg.max_epochs = 100000;
  return cfg;
}

embeddings::EmbeddingMatrix tiny_embeddings() {
  const auto vocab = corpus::Vocabulary::from_ordered({{"a", 2}, {"b", 1}, {"c", 1}});
  embeddings::EmbeddingConfig cfg;
  cfg.dimension = 2;
  return embeddings::EmbeddingMatrix(vocab, {1.0, 0.0, 0.0, 1.0, 2.0, -4.0}, {}, cfg);
}

}  // namespace

TEST_CASE("random classifier is balanced and seeded") {
  const auto labels = random_predict(100000, 7);
  const auto pos = std::count(labels.begin(), labels.end(), Label::positive);
  CHECK(std::abs(static_cast<double>(pos) / 100000 - 0.5) < 0.01);
  CHECK(random_predict(0, 7).empty());
  CHECK(random_predict(500, 7) == random_predict(500, 7));
  CHECK(random_predict(500, 7) != random_predict(500, 8));
}

TEST_CASE("tf-idf weights match the smoothed formula") {
  const Docs docs{{"a", "b"}, {"a"}};
  const auto model = TfidfModel::fit(docs);
  CHECK(model.dimension() == 2);
  CHECK(model.document_count() == 2);
  CHECK(model.terms() == std::vector<std::string>{"a", "b"});
  CHECK(*model.idf("a") == doctest::Approx(1.0));
  CHECK(*model.idf("b") == doctest::Approx(std::log(1.5) + 1.0));
  CHECK_FALSE(model.idf("z").has_value());
  const auto v = model.transform(docs[0]);
  REQUIRE(v.nonzeros() == 2);
  CHECK(v.values[0] == doctest::Approx(0.579739).epsilon(1e-6));
  CHECK(v.values[1] == doctest::Approx(0.814801).epsilon(1e-6));
}

TEST_CASE("tf-idf vectors are unit length and ignore unseen terms") {
  const Docs docs{{"x", "y", "y"}, {"y", "z"}, {"z", "z", "w", "x"}};
  const auto model = TfidfModel::fit(docs);
  for (const auto& row : model.transform_all(docs).rows) {
    CHECK(row.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(model.transform(std::vector<std::string>{"unseen", "words"}).nonzeros() == 0);
  CHECK(model.transform(std::vector<std::string>{}).nonzeros() == 0);
  const auto partial = model.transform(std::vector<std::string>{"x", "new"});
  CHECK(partial.nonzeros() == 1);
  CHECK(partial.values[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(TfidfModel::fit(Docs{}), InvalidArgument);
}

TEST_CASE("sparse vectors") {
  const std::vector<double> dense{0.0, 2.0, 0.0, -1.0};
  const auto s = SparseVector::from_dense(dense);
  CHECK(s.indices == std::vector<std::uint32_t>{1, 3});
  CHECK(s.values == std::vector<double>{2.0, -1.0});
  CHECK(s.squared_norm() == 5.0);
}

TEST_CASE("averaged embeddings") {
  const auto emb = tiny_embeddings();
  embeddings::EmbeddingLookup lookup(emb, 1);
  SUBCASE("single word is its own vector") {
    const auto v = swe_represent(std::vector<std::string>{"c"}, lookup);
    CHECK(v.values == std::vector<double>{2.0, -4.0});
    CHECK(v.word_count == 1);
  }
  SUBCASE("mean of two words") {
    const auto v = swe_represent(std::vector<std::string>{"a", "b"}, lookup);
    CHECK(v.values == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("empty tweet") {
    const auto v = swe_represent(std::vector<std::string>{}, lookup);
    CHECK(v.empty());
    CHECK(v.values == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("order does not matter") {
    const auto p = swe_represent(std::vector<std::string>{"a", "c", "b", "zz"}, lookup);
    const auto q = swe_represent(std::vector<std::string>{"zz", "b", "a", "c"}, lookup);
    for (std::size_t i = 0; i < 2; ++i) CHECK(p.values[i] == doctest::Approx(q.values[i]).epsilon(1e-15));
  }
  SUBCASE("feature set") {
    const auto fs = swe_features(Docs{{"a"}, {"b", "b"}}, lookup);
    CHECK(fs.dimension == 2);
    REQUIRE(fs.rows.size() == 2);
    CHECK(fs.rows[1].indices == std::vector<std::uint32_t>{1});
  }
}

TEST_CASE("averaging is linear in the embedding scale") {
  const auto base = tiny_embeddings();
  std::vector<double> scaled(base.input_data().begin(), base.input_data().end());
  for (auto& v : scaled) v *= 3.0;
  embeddings::EmbeddingMatrix big(base.vocab(), scaled, {}, base.config());
  embeddings::EmbeddingLookup a(base, 1), b(big, 1);
  const std::vector<std::string> tweet{"a", "b", "c"};
  const auto pa = swe_represent(tweet, a);
  const auto pb = swe_represent(tweet, b);
  for (std::size_t i = 0; i < 2; ++i) CHECK(pb.values[i] == doctest::Approx(3.0 * pa.values[i]).epsilon(1e-12));
}

TEST_CASE("svm matches a reference solver") {
  // Reference weights from an independent dual coordinate descent solver
  // with the bias as a regularized constant feature, C = 0.5.
  const auto x = dense_set({{1, 2}, {2, 3}, {3, 3}, {2, 1}, {-1, -1}, {-2, 0}, {0, -2}, {1, -1}});
  const std::vector<Label> y(8, Label::negative);
  auto labels = y;
  std::fill(labels.begin(), labels.begin() + 4, Label::positive);

  const auto sq = LinearSvm::train(x, labels, tight(SvmLoss::squared_hinge, 0.5));
  CHECK(sq.converged());
  CHECK(sq.weights()[0] == doctest::Approx(31.0 / 113).epsilon(1e-6));
  CHECK(sq.weights()[1] == doctest::Approx(65.0 / 113).epsilon(1e-6));
  CHECK(sq.bias() == doctest::Approx(-36.0 / 113).epsilon(1e-6));

  const auto h = LinearSvm::train(x, labels, tight(SvmLoss::hinge, 0.5));
  CHECK(h.weights()[0] == doctest::Approx(13.0 / 42).epsilon(1e-6));
  CHECK(h.weights()[1] == doctest::Approx(32.0 / 42).epsilon(1e-6));
  CHECK(h.bias() == doctest::Approx(-16.0 / 42).epsilon(1e-6));
}

TEST_CASE("svm separates blobs") {
  const auto b = blobs(300, 3.0, 1);
  for (auto loss : {SvmLoss::squared_hinge, SvmLoss::hinge}) {
    SvmConfig cfg;
    cfg.loss = loss;
    const auto svm = LinearSvm::train(b.x, b.y, cfg);
    CHECK(svm.predict(b.x) == b.y);
  }
}

TEST_CASE("duplicating every instance equals doubling C") {
  const auto b = blobs(60, 0.7, 2);
  auto doubled = b;
  doubled.x.rows.insert(doubled.x.rows.end(), b.x.rows.begin(), b.x.rows.end());
  doubled.y.insert(doubled.y.end(), b.y.begin(), b.y.end());
  for (auto loss : {SvmLoss::squared_hinge, SvmLoss::hinge}) {
    const auto single = LinearSvm::train(b.x, b.y, tight(loss, 1.0));
    const auto twice = LinearSvm::train(doubled.x, doubled.y, tight(loss, 0.5));
    for (std::size_t i = 0; i < single.dimension(); ++i) {
      CHECK(twice.weights()[i] == doctest::Approx(single.weights()[i]).epsilon(1e-6));
    }
    CHECK(twice.bias() == doctest::Approx(single.bias()).epsilon(1e-6));
  }
}

TEST_CASE("svm solution does not depend on instance order") {
  const auto b = blobs(80, 0.8, 3);
  std::vector<std::size_t> order(b.y.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(9);
  rng.shuffle(order);
  Blobs shuffled;
  shuffled.x.dimension = b.x.dimension;
  for (auto i : order) {
    shuffled.x.rows.push_back(b.x.rows[i]);
    shuffled.y.push_back(b.y[i]);
  }
  const auto a = LinearSvm::train(b.x, b.y, tight());
  const auto s = LinearSvm::train(shuffled.x, shuffled.y, tight());
  for (std::size_t i = 0; i < a.dimension(); ++i) CHECK(std::abs(a.weights()[i] - s.weights()[i]) < 1e-6);
  CHECK(std::abs(a.bias() - s.bias()) < 1e-6);
}

TEST_CASE("dual objective never decreases") {
  const auto b = blobs(100, 0.5, 4);
  for (auto loss : {SvmLoss::squared_hinge, SvmLoss::hinge}) {
    std::vector<SvmEpoch> trace;
    LinearSvm::train(b.x, b.y, tight(loss, 2.0), &trace);
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      CHECK(trace[i].dual >= trace[i - 1].dual - 1e-12 * std::abs(trace[i - 1].dual));
    }
    for (const auto& e : trace) CHECK(e.primal >= e.dual - 1e-9);
    CHECK(trace.back().relative_gap <= 1e-12);
  }
}

TEST_CASE("svm edge cases") {
  LinearSvm zero({0.0, 0.0}, 0.0, 1.0, SvmLoss::hinge);
  CHECK(zero.predict(SparseVector{}) == Label::positive);
  const auto x = dense_set({{1.0}, {2.0}});
  CHECK_THROWS_AS(LinearSvm::train(x, std::vector<Label>{Label::positive, Label::positive}, SvmConfig{}),
                  InvalidArgument);
  CHECK_THROWS_AS(LinearSvm::train(x, std::vector<Label>{Label::positive}, SvmConfig{}), InvalidArgument);
  SvmConfig bad;
  bad.c = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK(parse_svm_loss(to_string(SvmLoss::hinge)) == SvmLoss::hinge);
  CHECK_THROWS_AS(parse_svm_loss("logistic"), InvalidArgument);
}

TEST_CASE("svm text format round-trips") {
  const auto b = blobs(50, 1.0, 5);
  const auto svm = LinearSvm::train(b.x, b.y, SvmConfig{});
  std::stringstream buf;
  svm.write(buf);
  const auto text = buf.str();
  const auto loaded = LinearSvm::read(buf);
  CHECK(loaded.weights() == svm.weights());
  CHECK(loaded.bias() == svm.bias());
  CHECK(loaded.loss() == svm.loss());
  CHECK(loaded.predict(b.x) == svm.predict(b.x));
  std::ostringstream again;
  loaded.write(again);
  CHECK(again.str() == text);
  std::istringstream bad("2 1 squared_hinge\n0.5\n1\n");
  CHECK_THROWS_AS(LinearSvm::read(bad), ParseError);
}
