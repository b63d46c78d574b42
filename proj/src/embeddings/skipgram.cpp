#include "wecnn/embeddings/skipgram.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "wecnn/common.hpp"
#include "wecnn/detail/dot.hpp"

namespace wecnn::embeddings {

FileSentences::FileSentences(std::vector<std::filesystem::path> paths,
                             corpus::Preprocessor preprocessor)
    : paths_(std::move(paths)), preprocessor_(std::move(preprocessor)) {}

void FileSentences::for_each(const Sink& sink) const {
  for (const auto& path : paths_) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus: " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      const auto tokens = preprocessor_.surfaces(line);
      sink(tokens);
    }
  }
}

NoiseDistribution::NoiseDistribution(std::span<const std::uint64_t> counts, double power) {
  probability_.resize(counts.size());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probability_[i] = std::pow(static_cast<double>(counts[i]), power);
    total += probability_[i];
  }
  cumulative_.resize(counts.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probability_[i] /= total;
    acc += probability_[i];
    cumulative_[i] = acc;
  }
}

std::size_t NoiseDistribution::sample(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               cumulative_.size() - 1);
}

namespace {

struct EncodedCorpus {
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> offsets{0};

  std::size_t sentences() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> sentence(std::size_t i) const {
    return {ids.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
};

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

class Sigmoid {
 public:
  explicit Sigmoid(bool use_table) : use_table_(use_table) {
    if (!use_table_) return;
    for (std::size_t i = 0; i < kBins; ++i) {
      const double x = (static_cast<double>(i) / kBins * 2.0 - 1.0) * kMax;
      table_[i] = 1.0 / (1.0 + std::exp(-x));
    }
  }

  double operator()(double x) const {
    if (!use_table_) return 1.0 / (1.0 + std::exp(-x));
    if (x >= kMax) return 1.0;
    if (x <= -kMax) return 0.0;
    return table_[static_cast<std::size_t>((x + kMax) * (kBins / kMax / 2.0))];
  }

 private:
  static constexpr std::size_t kBins = 1000;
  static constexpr double kMax = 6.0;
  bool use_table_;
  std::array<double, kBins> table_{};
};

// Element access for the shared matrices. Concurrent workers use relaxed
// atomic loads/stores (lock-free, last write wins).
template <bool Concurrent>
struct Access {
  static double get(const double& x) {
    if constexpr (Concurrent) {
      return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
    } else {
      return x;
    }
  }
  static void add(double& x, double delta) {
    if constexpr (Concurrent) {
      std::atomic_ref<double> r(x);
      r.store(r.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
    } else {
      x += delta;
    }
  }
};

template <bool Concurrent>
double dot(const double* a, const double* b, std::size_t n) {
  if constexpr (Concurrent) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += Access<true>::get(a[i]) * Access<true>::get(b[i]);
    return s;
  } else {
    return detail::dot(a, b, n);
  }
}

struct SharedState {
  const EmbeddingConfig& config;
  const NoiseDistribution& noise;
  const Sigmoid& sigmoid;
  std::vector<double>& input;
  std::vector<double>& output;
  std::vector<double> keep_probability;  // empty when subsampling is off
  std::uint64_t total_words = 0;          // iterations x corpus tokens
  bool track_loss = false;
  std::atomic<std::uint64_t> processed{0};
};

struct WorkerTally {
  double loss = 0.0;
  std::uint64_t pairs = 0;
};

template <bool Concurrent>
class Worker {
 public:
  Worker(SharedState& shared, Rng& rng)
      : s_(shared), rng_(rng), dim_(shared.config.dimension), neu1e_(dim_) {}

  void run(const EncodedCorpus& corpus, std::size_t first, std::size_t last, WorkerTally& tally) {
    const auto& cfg = s_.config;
    std::vector<std::uint32_t> buffer;
    std::uint64_t pending = 0;
    double lr = current_lr();
    const auto tick = [&](std::uint64_t words) {
      pending += words;
      if (pending >= cfg.batch_size) {
        s_.processed.fetch_add(pending, std::memory_order_relaxed);
        pending = 0;
        lr = current_lr();
      }
    };
    for (std::size_t si = first; si < last; ++si) {
      auto sentence = corpus.sentence(si);
      const std::size_t original_len = sentence.size();
      if (!s_.keep_probability.empty()) {
        buffer.clear();
        for (auto id : sentence) {
          if (s_.keep_probability[id] >= 1.0 || rng_.uniform() < s_.keep_probability[id]) {
            buffer.push_back(id);
          }
        }
        sentence = buffer;
      }
      const std::size_t len = sentence.size();
      for (std::size_t pos = 0; pos < len; ++pos) {
        const std::size_t shrink = cfg.dynamic_window ? rng_.below(cfg.window) : 0;
        const std::size_t win = cfg.window - shrink;
        const std::size_t lo = pos >= win ? pos - win : 0;
        const std::size_t hi = std::min(len - 1, pos + win);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          tally.loss += train_pair(sentence[pos], sentence[c], lr);
          ++tally.pairs;
        }
        tick(1);
      }
      // Words removed by subsampling still advance the learning-rate schedule.
      if (original_len > len) tick(original_len - len);
    }
    s_.processed.fetch_add(pending, std::memory_order_relaxed);
  }

 private:
  double current_lr() const {
    const double progress = static_cast<double>(s_.processed.load(std::memory_order_relaxed)) /
                            static_cast<double>(s_.total_words + 1);
    return s_.config.learning_rate * std::max(1e-4, 1.0 - progress);
  }

  // One positive and `negative_samples` noise updates; returns the pair loss.
  double train_pair(std::uint32_t center, std::uint32_t context, double lr) {
    using A = Access<Concurrent>;
    double* v = s_.input.data() + static_cast<std::size_t>(center) * dim_;
    std::fill(neu1e_.begin(), neu1e_.end(), 0.0);
    double loss = 0.0;
    for (std::size_t d = 0; d <= s_.config.negative_samples; ++d) {
      std::size_t target;
      double label;
      if (d == 0) {
        target = context;
        label = 1.0;
      } else {
        target = s_.noise.sample(rng_);
        if (target == context) continue;
        label = 0.0;
      }
      double* u = s_.output.data() + target * dim_;
      const double f = dot<Concurrent>(v, u, dim_);
      if (s_.track_loss) loss -= label > 0.5 ? log_sigmoid(f) : log_sigmoid(-f);
      const double g = (label - s_.sigmoid(f)) * lr;
      for (std::size_t i = 0; i < dim_; ++i) {
        neu1e_[i] += g * A::get(u[i]);
        A::add(u[i], g * A::get(v[i]));
      }
    }
    for (std::size_t i = 0; i < dim_; ++i) A::add(v[i], neu1e_[i]);
    return loss;
  }

  SharedState& s_;
  Rng& rng_;
  std::size_t dim_;
  std::vector<double> neu1e_;
};

}  // namespace

EmbeddingMatrix train_embeddings(const SentenceSource& corpus, const EmbeddingConfig& config,
                                 SkipGramTrace* trace) {
  config.validate();

  corpus::TokenCounter counter;
  corpus.for_each([&](std::span<const std::string> s) { counter.add(s); });
  auto vocab = counter.finish(config.min_frequency);
  if (vocab.empty()) throw InvalidArgument("no trainable tokens");

  EncodedCorpus encoded;
  std::vector<std::uint32_t> ids;
  corpus.for_each([&](std::span<const std::string> s) {
    ids.clear();
    for (const auto& tok : s) {
      if (auto idx = vocab.index_of(tok)) ids.push_back(static_cast<std::uint32_t>(*idx));
    }
    if (ids.size() < 2) return;
    encoded.ids.insert(encoded.ids.end(), ids.begin(), ids.end());
    encoded.offsets.push_back(encoded.ids.size());
  });
  if (encoded.sentences() == 0) throw InvalidArgument("no trainable tokens");

  const std::size_t v = vocab.size();
  const std::size_t dim = config.dimension;
  std::vector<double> input(v * dim);
  std::vector<double> output(v * dim, 0.0);
  {
    Rng init(mix_seed(config.seed, 0x1417));
    for (auto& x : input) x = (init.uniform() - 0.5) / static_cast<double>(dim);
  }

  std::vector<std::uint64_t> counts(v);
  std::uint64_t total_count = 0;
  for (std::size_t i = 0; i < v; ++i) {
    counts[i] = vocab.frequency(i);
    total_count += counts[i];
  }
  const NoiseDistribution noise(counts);
  const Sigmoid sigmoid(config.sigmoid_table);

  SharedState shared{config, noise, sigmoid, input, output, {}, 0, {}};
  if (config.subsample > 0.0) {
    shared.keep_probability.resize(v);
    const double threshold = config.subsample * static_cast<double>(total_count);
    for (std::size_t i = 0; i < v; ++i) {
      const double f = static_cast<double>(counts[i]);
      shared.keep_probability[i] = (std::sqrt(f / threshold) + 1.0) * threshold / f;
    }
  }
  shared.total_words = static_cast<std::uint64_t>(config.iterations) * encoded.ids.size();
  shared.track_loss = trace != nullptr;

  const std::size_t workers = std::min(config.workers, encoded.sentences());
  std::vector<Rng> rngs;
  for (std::size_t w = 0; w < workers; ++w) rngs.emplace_back(mix_seed(config.seed, w + 1));

  SkipGramTrace local_trace;
  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    std::vector<WorkerTally> tallies(workers);
    if (workers == 1) {
      Worker<false> worker(shared, rngs[0]);
      worker.run(encoded, 0, encoded.sentences(), tallies[0]);
    } else {
      std::vector<std::thread> threads;
      const std::size_t n = encoded.sentences();
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = n * w / workers;
        const std::size_t last = n * (w + 1) / workers;
        threads.emplace_back([&, w, first, last] {
          Worker<true> worker(shared, rngs[w]);
          worker.run(encoded, first, last, tallies[w]);
        });
      }
      for (auto& t : threads) t.join();
    }
    double loss = 0.0;
    std::uint64_t pairs = 0;
    for (const auto& t : tallies) {
      loss += t.loss;
      pairs += t.pairs;
    }
    local_trace.iteration_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
    local_trace.iteration_pairs.push_back(pairs);
  }
  local_trace.trained_tokens = encoded.ids.size();
  if (trace) *trace = std::move(local_trace);

  return EmbeddingMatrix(std::move(vocab), std::move(input), std::move(output), config);
}

EmbeddingMatrix train_embeddings(const std::vector<std::vector<std::string>>& sentences,
                                 const EmbeddingConfig& config, SkipGramTrace* trace) {
  return train_embeddings(InMemorySentences(sentences), config, trace);
}

}  // namespace wecnn::embeddings
