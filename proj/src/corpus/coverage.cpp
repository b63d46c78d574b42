#include "wecnn/corpus/coverage.hpp"

#include "wecnn/common.hpp"
#include "wecnn/corpus/tokenizer.hpp"

namespace wecnn::corpus {

CoverageReport coverage(const std::set<std::string>& dataset_vocab,
                        const std::set<std::string>& embedding_vocab) {
  if (dataset_vocab.empty()) throw InvalidArgument("empty dataset vocabulary");
  CoverageReport r;
  r.dataset_vocab_size = dataset_vocab.size();
  for (const auto& w : dataset_vocab) r.covered_count += embedding_vocab.count(w);
  r.coverage_rate = static_cast<double>(r.covered_count) / static_cast<double>(r.dataset_vocab_size);
  return r;
}

CoverageComparison compare_coverage(const std::set<std::string>& dataset_vocab,
                                    const std::set<std::string>& vocab_a,
                                    const std::set<std::string>& vocab_b) {
  CoverageComparison c{coverage(dataset_vocab, vocab_a), coverage(dataset_vocab, vocab_b), {}, {}};
  for (const auto& w : dataset_vocab) {
    const bool in_a = vocab_a.count(w) != 0;
    const bool in_b = vocab_b.count(w) != 0;
    if (in_a && !in_b) c.only_in_a.push_back(w);
    if (in_b && !in_a) c.only_in_b.push_back(w);
  }
  return c;
}

namespace {

template <typename Range>
ExclusiveCounts count_kinds(const Range& tokens) {
  ExclusiveCounts c;
  for (const auto& t : tokens) {
    switch (classify(t)) {
      case TokenKind::handle: ++c.handles; break;
      case TokenKind::hashtag: ++c.hashtags; break;
      default: ++c.others; break;
    }
  }
  return c;
}

}  // namespace

ExclusiveCounts categorize_exclusive(const std::set<std::string>& tokens) {
  return count_kinds(tokens);
}

ExclusiveCounts categorize_exclusive(const std::vector<std::string>& tokens) {
  return count_kinds(tokens);
}

}  // namespace wecnn::corpus
