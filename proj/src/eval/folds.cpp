#include "wecnn/eval/folds.hpp"

#include <algorithm>

#include "wecnn/random.hpp"

namespace wecnn::eval {

FoldSplit FoldPlan::fold(std::size_t f) const {
  if (f >= kPartitionCount) throw InvalidArgument("fold index out of range");
  FoldSplit split;
  const std::size_t validation = (f + 1) % kPartitionCount;
  split.test = partitions[f];
  split.validation = partitions[validation];
  for (std::size_t p = 0; p < kPartitionCount; ++p) {
    if (p == f || p == validation) continue;
    split.train.insert(split.train.end(), partitions[p].begin(), partitions[p].end());
  }
  std::sort(split.train.begin(), split.train.end());
  return split;
}

std::vector<std::size_t> FoldPlan::assignment(std::size_t instance_count) const {
  std::vector<std::size_t> out(instance_count, kPartitionCount);
  for (std::size_t p = 0; p < kPartitionCount; ++p) {
    for (auto i : partitions[p]) {
      if (i >= instance_count) throw InvalidArgument("fold plan does not match the dataset");
      out[i] = p;
    }
  }
  return out;
}

FoldPlan make_folds(std::span<const Label> labels, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == Label::positive ? pos : neg).push_back(i);
  }
  if (pos.size() < kPartitionCount || neg.size() < kPartitionCount) {
    throw InvalidArgument("stratified folds need at least " + std::to_string(kPartitionCount) +
                          " instances of each class");
  }
  Rng rng(mix_seed(seed, 0xF01D));
  rng.shuffle(pos);
  rng.shuffle(neg);

  FoldPlan plan;
  plan.seed = seed;
  std::size_t next = 0;
  for (const auto* group : {&pos, &neg}) {
    for (auto i : *group) plan.partitions[next++ % kPartitionCount].push_back(i);
  }
  for (auto& p : plan.partitions) std::sort(p.begin(), p.end());
  return plan;
}

}  // namespace wecnn::eval
