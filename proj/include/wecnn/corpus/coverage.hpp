#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace wecnn::corpus {

struct CoverageReport {
  std::size_t dataset_vocab_size = 0;
  std::size_t covered_count = 0;
  double coverage_rate = 0.0;
};

/// Coverage of a dataset vocabulary by an embedding vocabulary.
/// Throws InvalidArgument("empty dataset vocabulary") on an empty dataset.
CoverageReport coverage(const std::set<std::string>& dataset_vocab,
                        const std::set<std::string>& embedding_vocab);

/// Two embedding vocabularies compared on one dataset vocabulary.
struct CoverageComparison {
  CoverageReport a;
  CoverageReport b;
  std::vector<std::string> only_in_a;  // dataset words covered by a but not b
  std::vector<std::string> only_in_b;
};

CoverageComparison compare_coverage(const std::set<std::string>& dataset_vocab,
                                    const std::set<std::string>& vocab_a,
                                    const std::set<std::string>& vocab_b);

struct ExclusiveCounts {
  std::size_t handles = 0;
  std::size_t hashtags = 0;
  std::size_t others = 0;

  std::size_t total() const { return handles + hashtags + others; }
  friend bool operator==(const ExclusiveCounts&, const ExclusiveCounts&) = default;
};

ExclusiveCounts categorize_exclusive(const std::set<std::string>& tokens);
ExclusiveCounts categorize_exclusive(const std::vector<std::string>& tokens);

}  // namespace wecnn::corpus
