#include "wecnn/corpus/vocabulary.hpp"

#include <algorithm>

#include "wecnn/common.hpp"

namespace wecnn::corpus {

Vocabulary Vocabulary::from_counts(const std::unordered_map<std::string, std::uint64_t>& counts,
                                   std::uint64_t min_frequency) {
  std::vector<VocabEntry> entries;
  for (const auto& [token, count] : counts) {
    if (count >= min_frequency && count > 0) entries.push_back({token, count});
  }
  std::sort(entries.begin(), entries.end(), [](const VocabEntry& a, const VocabEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.token < b.token;
  });
  return from_ordered(std::move(entries), min_frequency);
}

Vocabulary Vocabulary::from_ordered(std::vector<VocabEntry> entries, std::uint64_t min_frequency) {
  Vocabulary v;
  v.min_frequency_ = min_frequency;
  v.index_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!v.index_.emplace(entries[i].token, i).second) {
      throw InvalidArgument("duplicate token '" + entries[i].token + "'");
    }
  }
  v.entries_ = std::move(entries);
  return v;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TokenCounter::merge(const TokenCounter& other) {
  for (const auto& [token, count] : other.counts_) counts_[token] += count;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> corpus,
                            std::uint64_t min_frequency) {
  TokenCounter counter;
  for (const auto& doc : corpus) counter.add(doc);
  return counter.finish(min_frequency);
}

}  // namespace wecnn::corpus
