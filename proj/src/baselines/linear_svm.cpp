#include "wecnn/baselines/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "wecnn/numeric_io.hpp"
#include "wecnn/random.hpp"

namespace wecnn::baselines {

namespace {

double sparse_dot(const std::vector<double>& w, const SparseVector& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.indices.size(); ++j) s += w[x.indices[j]] * x.values[j];
  return s;
}

double sign(Label y) { return y == Label::positive ? 1.0 : -1.0; }

}  // namespace

std::string to_string(SvmLoss loss) {
  return loss == SvmLoss::hinge ? "hinge" : "squared_hinge";
}

SvmLoss parse_svm_loss(std::string_view text) {
  if (text == "squared_hinge") return SvmLoss::squared_hinge;
  if (text == "hinge") return SvmLoss::hinge;
  throw InvalidArgument("unknown SVM loss '" + std::string(text) + "'");
}

void SvmConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("SVM C must be a positive number");
  if (!(tolerance > 0.0)) throw InvalidArgument("SVM tolerance must be > 0");
  if (max_epochs < 1) throw InvalidArgument("SVM max epochs must be >= 1");
}

LinearSvm::LinearSvm(std::vector<double> weights, double bias, double c, SvmLoss loss)
    : weights_(std::move(weights)), bias_(bias), c_(c), loss_(loss) {}

LinearSvm LinearSvm::train(const FeatureSet& features, std::span<const Label> labels,
                           const SvmConfig& config, std::vector<SvmEpoch>* trace) {
  config.validate();
  const auto& xs = features.rows;
  const std::size_t l = xs.size();
  if (labels.size() != l) throw InvalidArgument("feature/label count mismatch");
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::positive));
  if (positives == 0 || positives == l) throw InvalidArgument("degenerate labels");
  for (const auto& x : xs) {
    if (!x.indices.empty() && x.indices.back() >= features.dimension) {
      throw InvalidArgument("feature index out of range");
    }
  }

  // Squared hinge: unbounded alpha with a diagonal shift; hinge: box [0, C].
  const bool squared = config.loss == SvmLoss::squared_hinge;
  const double diag = squared ? 0.5 / config.c : 0.0;
  const double upper = squared ? std::numeric_limits<double>::infinity() : config.c;

  std::vector<double> qii(l);
  for (std::size_t i = 0; i < l; ++i) qii[i] = xs[i].squared_norm() + 1.0 + diag;

  std::vector<double> alpha(l, 0.0);
  std::vector<double> w(features.dimension, 0.0);
  double b = 0.0;
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix_seed(config.seed, 0x5F1));

  LinearSvm model({}, 0.0, config.c, config.loss);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (auto i : order) {
      const double y = sign(labels[i]);
      const double g = y * (sparse_dot(w, xs[i]) + b) - 1.0 + diag * alpha[i];
      double pg = g;
      if (alpha[i] == 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] == upper) {
        pg = std::max(g, 0.0);
      }
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - g / qii[i], 0.0, upper);
      const double d = (alpha[i] - old) * y;
      for (std::size_t j = 0; j < xs[i].indices.size(); ++j) w[xs[i].indices[j]] += d * xs[i].values[j];
      b += d;
    }

    // Rebuild w from alpha so rounding drift does not accumulate across epochs.
    std::fill(w.begin(), w.end(), 0.0);
    b = 0.0;
    double alpha_sum = 0.0;
    double alpha_sq = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      if (alpha[i] == 0.0) continue;
      const double d = alpha[i] * sign(labels[i]);
      for (std::size_t j = 0; j < xs[i].indices.size(); ++j) w[xs[i].indices[j]] += d * xs[i].values[j];
      b += d;
      alpha_sum += alpha[i];
      alpha_sq += alpha[i] * alpha[i];
    }
    double norm_sq = b * b;
    for (double v : w) norm_sq += v * v;
    double loss = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      const double slack = std::max(0.0, 1.0 - sign(labels[i]) * (sparse_dot(w, xs[i]) + b));
      loss += squared ? slack * slack : slack;
    }
    SvmEpoch rec;
    rec.primal = 0.5 * norm_sq + config.c * loss;
    rec.dual = alpha_sum - 0.5 * norm_sq - 0.5 * diag * alpha_sq;
    rec.relative_gap = (rec.primal - rec.dual) / std::max(std::abs(rec.primal), 1e-300);
    if (trace) trace->push_back(rec);
    model.epochs_ = epoch;
    if (rec.relative_gap <= config.tolerance) {
      model.converged_ = true;
      break;
    }
  }
  model.weights_ = std::move(w);
  model.bias_ = b;
  return model;
}

double LinearSvm::decision_value(const SparseVector& x) const {
  if (!x.indices.empty() && x.indices.back() >= weights_.size()) {
    throw InvalidArgument("feature index out of range");
  }
  return sparse_dot(weights_, x) + bias_;
}

Label LinearSvm::predict(const SparseVector& x) const {
  return label_from_bool(decision_value(x) >= 0.0);
}

std::vector<Label> LinearSvm::predict(const FeatureSet& features) const {
  std::vector<Label> out;
  out.reserve(features.rows.size());
  for (const auto& x : features.rows) out.push_back(predict(x));
  return out;
}

void LinearSvm::write(std::ostream& out) const {
  out << weights_.size() << ' ' << format_double(c_) << ' ' << to_string(loss_) << '\n';
  out << format_double(bias_) << '\n';
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out << ' ';
    out << format_double(weights_[i]);
  }
  out << '\n';
  if (!out) throw IoError("failed to write SVM model");
}

void LinearSvm::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write(out);
}

LinearSvm LinearSvm::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing SVM header");
  std::istringstream header(line);
  std::string dim_s, c_s, loss_s, extra;
  if (!(header >> dim_s >> c_s >> loss_s) || (header >> extra)) {
    throw ParseError("line 1: malformed SVM header");
  }
  std::size_t dim = 0;
  double c = 0.0;
  if (!parse_size(dim_s, dim) || !parse_double(c_s, c)) throw ParseError("line 1: malformed SVM header");
  SvmLoss loss;
  try {
    loss = parse_svm_loss(loss_s);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("line 1: ") + e.what());
  }

  double bias = 0.0;
  if (!std::getline(in, line) || !parse_double(line, bias)) throw ParseError("line 2: invalid bias");

  std::vector<double> w;
  w.reserve(dim);
  if (!std::getline(in, line) && dim > 0) throw ParseError("line 3: missing weights");
  std::istringstream row(line);
  std::string tok;
  while (row >> tok) {
    double v = 0.0;
    if (!parse_double(tok, v)) throw ParseError("line 3: invalid number '" + tok + "'");
    w.push_back(v);
  }
  if (w.size() != dim) {
    throw ParseError("line 3: expected " + std::to_string(dim) + " weights, found " +
                     std::to_string(w.size()));
  }
  return LinearSvm(std::move(w), bias, c, loss);
}

LinearSvm LinearSvm::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read(in);
}

}  // namespace wecnn::baselines
