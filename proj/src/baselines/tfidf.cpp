#include "wecnn/baselines/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wecnn/common.hpp"

namespace wecnn::baselines {

TfidfModel TfidfModel::fit(std::span<const std::vector<std::string>> documents) {
  if (documents.empty()) throw InvalidArgument("cannot fit TF-IDF on an empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string_view> seen(doc.begin(), doc.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto t : seen) ++df[std::string(t)];
  }

  TfidfModel m;
  m.document_count_ = documents.size();
  const double n = static_cast<double>(documents.size());
  m.terms_.reserve(df.size());
  m.idf_.reserve(df.size());
  for (const auto& [term, count] : df) {
    m.index_.emplace(term, static_cast<std::uint32_t>(m.terms_.size()));
    m.terms_.push_back(term);
    m.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return m;
}

std::optional<double> TfidfModel::idf(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return idf_[it->second];
}

SparseVector TfidfModel::transform(std::span<const std::string> tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto it = index_.find(t);
    if (it != index_.end()) ids.push_back(it->second);
  }
  std::sort(ids.begin(), ids.end());

  SparseVector v;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    v.indices.push_back(ids[i]);
    v.values.push_back(static_cast<double>(j - i) * idf_[ids[i]]);
    i = j;
  }
  const double norm = std::sqrt(v.squared_norm());
  if (norm > 0.0) {
    for (auto& x : v.values) x /= norm;
  }
  return v;
}

FeatureSet TfidfModel::transform_all(std::span<const std::vector<std::string>> documents) const {
  FeatureSet fs;
  fs.dimension = dimension();
  fs.rows.reserve(documents.size());
  for (const auto& d : documents) fs.rows.push_back(transform(d));
  return fs;
}

}  // namespace wecnn::baselines
