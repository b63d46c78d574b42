#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wecnn/common.hpp"

namespace wecnn::eval {

inline constexpr std::size_t kPartitionCount = 5;

struct FoldSplit {
  std::vector<std::size_t> train;  // three partitions
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Five class-stratified partitions. In fold f partition f is the test set,
/// partition (f + 1) mod 5 the validation set and the rest are training data.
struct FoldPlan {
  std::array<std::vector<std::size_t>, kPartitionCount> partitions;  // sorted indices
  std::uint64_t seed = 0;

  std::size_t fold_count() const { return kPartitionCount; }
  FoldSplit fold(std::size_t f) const;
  /// Partition holding each instance.
  std::vector<std::size_t> assignment(std::size_t instance_count) const;
};

/// Shuffles each class and deals instances round-robin, negatives continuing
/// where positives stopped. Throws InvalidArgument when either class has
/// fewer than five instances.
FoldPlan make_folds(std::span<const Label> labels, std::uint64_t seed);

}  // namespace wecnn::eval
