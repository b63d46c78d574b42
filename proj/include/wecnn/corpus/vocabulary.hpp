#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wecnn::corpus {

struct VocabEntry {
  std::string token;
  std::uint64_t frequency = 0;
};

/// Dense token <-> index map. Indices are 0..size()-1 in entry order.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Keeps tokens with count >= min_frequency, ordered by descending
  /// frequency and then by token bytes.
  static Vocabulary from_counts(const std::unordered_map<std::string, std::uint64_t>& counts,
                                std::uint64_t min_frequency);

  /// Preserves the given order. Throws InvalidArgument on a duplicate token.
  static Vocabulary from_ordered(std::vector<VocabEntry> entries, std::uint64_t min_frequency = 0);

  std::optional<std::size_t> index_of(std::string_view token) const;
  bool contains(std::string_view token) const { return index_of(token).has_value(); }

  const std::string& token(std::size_t index) const { return entries_[index].token; }
  std::uint64_t frequency(std::size_t index) const { return entries_[index].frequency; }
  std::span<const VocabEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t min_frequency() const { return min_frequency_; }

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t min_frequency_ = 0;
};

/// Accumulates token counts; per-worker counters can be merged.
class TokenCounter {
 public:
  void add(std::string_view token) { ++counts_[std::string(token)]; }
  void add(std::span<const std::string> tokens) {
    for (const auto& t : tokens) add(t);
  }
  void merge(const TokenCounter& other);
  const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }
  Vocabulary finish(std::uint64_t min_frequency) const {
    return Vocabulary::from_counts(counts_, min_frequency);
  }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> corpus,
                            std::uint64_t min_frequency);

}  // namespace wecnn::corpus
