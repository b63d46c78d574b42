#pragma once

#include <string>
#include <string_view>

namespace wecnn::corpus {

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  /// `word` is lowercase UTF-8.
  virtual std::string stem(std::string_view word) const = 0;
  virtual std::string name() const = 0;
};

class IdentityStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override { return std::string(word); }
  std::string name() const override { return "none"; }
};

/// The Snowball Spanish stemming algorithm (as distributed with Snowball 3.x).
class SpanishSnowballStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override;
  std::string name() const override { return "snowball-spanish"; }
};

}  // namespace wecnn::corpus
