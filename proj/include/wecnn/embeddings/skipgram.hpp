#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wecnn/corpus/preprocess.hpp"
#include "wecnn/embeddings/config.hpp"
#include "wecnn/embeddings/embedding_matrix.hpp"
#include "wecnn/random.hpp"

namespace wecnn::embeddings {

/// A replayable stream of tokenized sentences.
class SentenceSource {
 public:
  using Sink = std::function<void(std::span<const std::string>)>;
  virtual ~SentenceSource() = default;
  /// Feeds every sentence to `sink`, in the same order on every call.
  virtual void for_each(const Sink& sink) const = 0;
};

class InMemorySentences final : public SentenceSource {
 public:
  explicit InMemorySentences(const std::vector<std::vector<std::string>>& sentences)
      : sentences_(&sentences) {}
  void for_each(const Sink& sink) const override {
    for (const auto& s : *sentences_) sink(s);
  }

 private:
  const std::vector<std::vector<std::string>>* sentences_;
};

/// One document per line of a UTF-8 text file, run through a preprocessor.
class FileSentences final : public SentenceSource {
 public:
  FileSentences(std::vector<std::filesystem::path> paths, corpus::Preprocessor preprocessor);
  void for_each(const Sink& sink) const override;

 private:
  std::vector<std::filesystem::path> paths_;
  corpus::Preprocessor preprocessor_;
};

/// Negative-sampling noise distribution: unigram counts raised to `power`.
class NoiseDistribution {
 public:
  NoiseDistribution(std::span<const std::uint64_t> counts, double power = 0.75);

  std::size_t sample(Rng& rng) const;
  double probability(std::size_t index) const { return probability_[index]; }
  std::size_t size() const { return probability_.size(); }

 private:
  std::vector<double> probability_;
  std::vector<double> cumulative_;
};

struct SkipGramTrace {
  /// Mean negative-sampling loss per (center, context) pair, per iteration.
  std::vector<double> iteration_loss;
  std::vector<std::uint64_t> iteration_pairs;
  std::uint64_t trained_tokens = 0;
};

/// Trains skip-gram embeddings with negative sampling.
///
/// For every (center, context) pair inside the window the update ascends
/// log s(u_ctx . v_center) + sum_j log s(-u_noise_j . v_center), where v are
/// input vectors, u context vectors and noise words come from
/// NoiseDistribution. Tokens rarer than min_frequency are removed before
/// windows are formed. With workers == 1 the result is a pure function of
/// (corpus, config).
///
/// Throws InvalidArgument("no trainable tokens") when the vocabulary is empty
/// or no sentence keeps two in-vocabulary tokens.
EmbeddingMatrix train_embeddings(const SentenceSource& corpus, const EmbeddingConfig& config,
                                 SkipGramTrace* trace = nullptr);

EmbeddingMatrix train_embeddings(const std::vector<std::vector<std::string>>& sentences,
                                 const EmbeddingConfig& config, SkipGramTrace* trace = nullptr);

}  // namespace wecnn::embeddings
