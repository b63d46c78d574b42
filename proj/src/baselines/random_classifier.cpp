#include "wecnn/baselines/random_classifier.hpp"

#include "wecnn/random.hpp"

namespace wecnn::baselines {

std::vector<Label> random_predict(std::size_t count, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x4A4D));
  std::vector<Label> out(count);
  for (auto& l : out) l = label_from_bool(rng.below(2) == 1);
  return out;
}

}  // namespace wecnn::baselines
