#pragma once

#include <cstdint>
#include <vector>

#include "wecnn/common.hpp"

namespace wecnn::baselines {

/// `count` labels, each positive with probability 1/2.
std::vector<Label> random_predict(std::size_t count, std::uint64_t seed);

}  // namespace wecnn::baselines
