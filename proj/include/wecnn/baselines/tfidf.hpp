#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wecnn/baselines/features.hpp"

namespace wecnn::baselines {

/// Smoothed TF-IDF: weight(t, d) = count(t, d) * (ln((1 + N) / (1 + df(t))) + 1),
/// L2-normalized per document. Terms are indexed in sorted order.
class TfidfModel {
 public:
  /// Throws InvalidArgument on an empty corpus.
  static TfidfModel fit(std::span<const std::vector<std::string>> documents);

  std::size_t dimension() const { return terms_.size(); }
  std::size_t document_count() const { return document_count_; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<double> idf(std::string_view term) const;

  /// Terms not seen during fit are dropped; an all-unseen document maps to
  /// the zero vector.
  SparseVector transform(std::span<const std::string> tokens) const;
  FeatureSet transform_all(std::span<const std::vector<std::string>> documents) const;

 private:
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t document_count_ = 0;
};

}  // namespace wecnn::baselines
