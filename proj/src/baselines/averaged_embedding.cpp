#include "wecnn/baselines/averaged_embedding.hpp"

namespace wecnn::baselines {

AveragedVector swe_represent(std::span<const std::string> tokens,
                             const embeddings::EmbeddingLookup& embeddings) {
  const std::size_t n = embeddings.dimension();
  AveragedVector out;
  out.values.assign(n, 0.0);
  out.word_count = tokens.size();
  if (tokens.empty()) return out;
  std::vector<double> w(n);
  for (const auto& t : tokens) {
    embeddings.vector_for(t, w);
    for (std::size_t i = 0; i < n; ++i) out.values[i] += w[i];
  }
  const double k = static_cast<double>(tokens.size());
  for (auto& v : out.values) v /= k;
  return out;
}

FeatureSet swe_features(std::span<const std::vector<std::string>> documents,
                        const embeddings::EmbeddingLookup& embeddings) {
  FeatureSet fs;
  fs.dimension = embeddings.dimension();
  fs.rows.reserve(documents.size());
  for (const auto& d : documents) {
    fs.rows.push_back(SparseVector::from_dense(swe_represent(d, embeddings).values));
  }
  return fs;
}

}  // namespace wecnn::baselines
