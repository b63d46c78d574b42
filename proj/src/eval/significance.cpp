#include "wecnn/eval/significance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace wecnn::eval {

std::string to_string(McNemarMethod method) {
  return method == McNemarMethod::exact_binomial ? "exact_binomial" : "chi_square_cc";
}

McNemarResult mcnemar(std::size_t b, std::size_t c) {
  McNemarResult r;
  r.b = b;
  r.c = c;
  const std::size_t n = b + c;
  if (n == 0) return r;
  if (n <= kExactMcNemarLimit) {
    // Binomial coefficients up to C(25, 12) are exact in a double.
    double coef = 1.0;
    double tail = 0.0;
    for (std::size_t k = 0; k <= std::min(b, c); ++k) {
      tail += coef;
      coef = coef * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    r.p_value = std::min(1.0, 2.0 * std::ldexp(tail, -static_cast<int>(n)));
    r.method = McNemarMethod::exact_binomial;
    return r;
  }
  const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
  r.statistic = diff * diff / static_cast<double>(n);
  r.p_value = std::min(1.0, std::erfc(std::sqrt(r.statistic / 2.0)));
  r.method = McNemarMethod::chi_square_cc;
  return r;
}

McNemarResult mcnemar(std::span<const Label> predictions_a, std::span<const Label> predictions_b,
                      std::span<const Label> gold) {
  if (predictions_a.size() != gold.size() || predictions_b.size() != gold.size()) {
    throw InvalidArgument("prediction sequences are not aligned with the gold labels");
  }
  std::size_t b = 0, c = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool a_ok = predictions_a[i] == gold[i];
    const bool b_ok = predictions_b[i] == gold[i];
    if (a_ok && !b_ok) ++b;
    if (!a_ok && b_ok) ++c;
  }
  return mcnemar(b, c);
}

double cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw InvalidArgument("rater label sequences differ in length");
  if (a.empty()) throw InvalidArgument("no items to compare");
  std::size_t agree = 0, a_pos = 0, b_pos = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    a_pos += a[i] == Label::positive;
    b_pos += b[i] == Label::positive;
  }
  const std::size_t n = a.size();
  const std::size_t chance = a_pos * b_pos + (n - a_pos) * (n - b_pos);  // p_e * n^2
  if (chance == n * n) {
    if (agree == n) return 1.0;
    throw InvalidArgument("degenerate marginals");
  }
  const double nn = static_cast<double>(n);
  const double po = static_cast<double>(agree) / nn;
  const double pe = static_cast<double>(chance) / (nn * nn);
  return (po - pe) / (1.0 - pe);
}

double pairwise_mean_kappa(std::span<const std::vector<Label>> raters) {
  if (raters.size() < 2) throw InvalidArgument("at least two raters are required");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < raters.size(); ++i) {
    for (std::size_t j = i + 1; j < raters.size(); ++j) {
      sum += cohen_kappa(raters[i], raters[j]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

}  // namespace wecnn::eval
