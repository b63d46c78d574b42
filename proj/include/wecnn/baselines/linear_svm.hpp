#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wecnn/baselines/features.hpp"
#include "wecnn/common.hpp"

namespace wecnn::baselines {

enum class SvmLoss { squared_hinge, hinge };

std::string to_string(SvmLoss loss);
SvmLoss parse_svm_loss(std::string_view text);

struct SvmConfig {
  double c = 1.0;
  SvmLoss loss = SvmLoss::squared_hinge;
  double tolerance = 1e-4;  // relative duality gap
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Objective values after one pass of coordinate descent.
struct SvmEpoch {
  double primal = 0.0;
  double dual = 0.0;  // maximized dual objective
  double relative_gap = 0.0;
};

/// L2-regularized linear SVM. The bias is learned as the weight of an
/// implicit constant feature and is therefore regularized too.
class LinearSvm {
 public:
  LinearSvm() = default;
  LinearSvm(std::vector<double> weights, double bias, double c, SvmLoss loss);

  /// Dual coordinate descent. Throws InvalidArgument("degenerate labels")
  /// unless both classes are present.
  static LinearSvm train(const FeatureSet& features, std::span<const Label> labels,
                         const SvmConfig& config, std::vector<SvmEpoch>* trace = nullptr);

  double decision_value(const SparseVector& x) const;
  /// Positive when the decision value is >= 0.
  Label predict(const SparseVector& x) const;
  std::vector<Label> predict(const FeatureSet& features) const;

  std::size_t dimension() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  double c() const { return c_; }
  SvmLoss loss() const { return loss_; }
  bool converged() const { return converged_; }
  std::size_t epochs() const { return epochs_; }

  /// Text format: `dimension C loss`, then the bias, then all weights.
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static LinearSvm read(std::istream& in);
  static LinearSvm load(const std::filesystem::path& path);

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  double c_ = 1.0;
  SvmLoss loss_ = SvmLoss::squared_hinge;
  bool converged_ = false;
  std::size_t epochs_ = 0;
};

}  // namespace wecnn::baselines
