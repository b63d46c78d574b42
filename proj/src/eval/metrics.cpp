#include "wecnn/eval/metrics.hpp"

namespace wecnn::eval {

namespace {

void check(std::span<const Label> predicted, std::span<const Label> gold) {
  if (predicted.size() != gold.size()) throw InvalidArgument("prediction/gold length mismatch");
  if (gold.empty()) throw InvalidArgument("no predictions to score");
}

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Confusion confusion(std::span<const Label> predicted, std::span<const Label> gold, Label positive) {
  check(predicted, gold);
  Confusion c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predicted[i] == positive;
    const bool g = gold[i] == positive;
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

Metrics metrics_from(const Confusion& c) {
  Metrics m;
  m.precision = ratio(c.tp, c.tp + c.fp, m.degenerate);
  m.recall = ratio(c.tp, c.tp + c.fn, m.degenerate);
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.degenerate = true;
  }
  return m;
}

Metrics metrics(std::span<const Label> predicted, std::span<const Label> gold) {
  return metrics_from(confusion(predicted, gold));
}

Metrics macro_metrics(std::span<const Label> predicted, std::span<const Label> gold) {
  const Metrics p = metrics_from(confusion(predicted, gold, Label::positive));
  const Metrics n = metrics_from(confusion(predicted, gold, Label::negative));
  Metrics m;
  m.precision = 0.5 * (p.precision + n.precision);
  m.recall = 0.5 * (p.recall + n.recall);
  m.f1 = 0.5 * (p.f1 + n.f1);
  m.degenerate = p.degenerate || n.degenerate;
  return m;
}

double accuracy(std::span<const Label> predicted, std::span<const Label> gold) {
  const Confusion c = confusion(predicted, gold);
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

}  // namespace wecnn::eval
