#pragma once

#include <cstddef>
#include <span>

#include "wecnn/common.hpp"

namespace wecnn::eval {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

/// Counts with `positive` as the class of interest.
Confusion confusion(std::span<const Label> predicted, std::span<const Label> gold,
                    Label positive = Label::positive);

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Set when some ratio had a zero denominator and was reported as 0.
  bool degenerate = false;
};

Metrics metrics_from(const Confusion& c);

/// Precision, recall and F1 of the positive class. Throws InvalidArgument on
/// a length mismatch or empty input.
Metrics metrics(std::span<const Label> predicted, std::span<const Label> gold);

/// Unweighted mean of the per-class metrics of both classes.
Metrics macro_metrics(std::span<const Label> predicted, std::span<const Label> gold);

double accuracy(std::span<const Label> predicted, std::span<const Label> gold);

}  // namespace wecnn::eval
