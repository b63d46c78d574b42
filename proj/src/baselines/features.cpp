#include "wecnn/baselines/features.hpp"

#include <limits>

#include "wecnn/common.hpp"

namespace wecnn::baselines {

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  if (dense.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("feature dimension too large");
  }
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == 0.0) continue;
    out.indices.push_back(static_cast<std::uint32_t>(i));
    out.values.push_back(dense[i]);
  }
  return out;
}

}  // namespace wecnn::baselines
