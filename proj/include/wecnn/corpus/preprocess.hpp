#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wecnn/corpus/stemmer.hpp"
#include "wecnn/corpus/tokenizer.hpp"

namespace wecnn::corpus {

class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// One token per line; blank lines and lines starting with '|' are skipped,
  /// and entries are lowercased.
  static StopWords load(const std::filesystem::path& path);
  static StopWords spanish_default();

  bool contains(std::string_view token) const { return words_.count(std::string(token)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Drops stop words and stems word tokens; handles, hashtags, URLs and other
/// tokens pass through unchanged. A stem that itself lands in the stop list is
/// dropped as well, so no output surface is a stop word.
std::vector<Token> preprocess(std::span<const Token> tokens, const StopWords& stopwords,
                              const Stemmer& stemmer);

/// tokenize + preprocess bound to a stop list and stemmer.
class Preprocessor {
 public:
  Preprocessor(StopWords stopwords, std::shared_ptr<const Stemmer> stemmer);

  /// Default Spanish stop list and Snowball stemmer.
  static Preprocessor spanish();
  /// Whitespace split only; used for already-preprocessed corpora.
  static Preprocessor pretokenized();

  std::vector<Token> operator()(std::string_view text) const;
  std::vector<std::string> surfaces(std::string_view text) const;

  const StopWords& stopwords() const { return stopwords_; }
  const Stemmer& stemmer() const { return *stemmer_; }

 private:
  StopWords stopwords_;
  std::shared_ptr<const Stemmer> stemmer_;
  bool split_only_ = false;
};

}  // namespace wecnn::corpus
