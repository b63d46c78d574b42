#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wecnn/common.hpp"

namespace wecnn::eval {

enum class McNemarMethod { exact_binomial, chi_square_cc };

std::string to_string(McNemarMethod method);

/// Largest discordant total that still uses the exact binomial test.
inline constexpr std::size_t kExactMcNemarLimit = 25;

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  double p_value = 1.0;
  double statistic = 0.0;  // chi-square value; 0 for the exact test
  McNemarMethod method = McNemarMethod::exact_binomial;
};

/// Two-tailed test on the discordant counts.
McNemarResult mcnemar(std::size_t b, std::size_t c);
McNemarResult mcnemar(std::span<const Label> predictions_a, std::span<const Label> predictions_b,
                      std::span<const Label> gold);

/// (p_o - p_e) / (1 - p_e) with p_e from the product of the marginals. When
/// both raters use one and the same label throughout, kappa is 1. Throws
/// InvalidArgument on empty or misaligned input.
double cohen_kappa(std::span<const Label> a, std::span<const Label> b);

/// Mean Cohen's kappa over all rater pairs.
double pairwise_mean_kappa(std::span<const std::vector<Label>> raters);

}  // namespace wecnn::eval
