#include "wecnn/eval/experiment.hpp"

#include <algorithm>

#include "wecnn/baselines/averaged_embedding.hpp"
#include "wecnn/baselines/random_classifier.hpp"
#include "wecnn/baselines/tfidf.hpp"
#include "wecnn/cnn/network.hpp"
#include "wecnn/cnn/trainer.hpp"
#include "wecnn/detail/parallel.hpp"
#include "wecnn/random.hpp"

namespace wecnn::eval {

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::random: return "random";
    case ClassifierKind::svm_tfidf: return "svm_tfidf";
    case ClassifierKind::svm_we: return "svm_we";
    case ClassifierKind::cnn: return "cnn";
  }
  return "unknown";
}

ClassifierKind parse_classifier(std::string_view text) {
  for (auto k : {ClassifierKind::random, ClassifierKind::svm_tfidf, ClassifierKind::svm_we,
                 ClassifierKind::cnn}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown classifier '" + std::string(text) +
                        "' (expected random, svm_tfidf, svm_we or cnn)");
}

bool needs_embeddings(ClassifierKind kind) {
  return kind == ClassifierKind::svm_we || kind == ClassifierKind::cnn;
}

namespace {

struct FoldOutput {
  FoldResult result;
  std::vector<Label> test_predictions;
};

template <typename T>
std::vector<T> gather(const std::vector<T>& all, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(all[i]);
  return out;
}

baselines::FeatureSet gather_rows(const baselines::FeatureSet& all,
                                  const std::vector<std::size_t>& idx) {
  baselines::FeatureSet out;
  out.dimension = all.dimension;
  out.rows = gather(all.rows, idx);
  return out;
}

class FoldRunner {
 public:
  FoldRunner(const corpus::LabeledDataset& dataset, const ClassifierSpec& spec,
             const embeddings::EmbeddingLookup* embeddings)
      : spec_(spec), embeddings_(embeddings), labels_(dataset.labels()) {
    tokens_.reserve(dataset.size());
    for (const auto& inst : dataset.instances) tokens_.push_back(inst.tokens);
    if (spec.kind == ClassifierKind::svm_we) swe_ = baselines::swe_features(tokens_, *embeddings);
  }

  FoldOutput run(const FoldPlan& plan, std::size_t f) const {
    const FoldSplit split = plan.fold(f);
    FoldOutput out;
    out.result.fold = f;
    out.result.train_size = split.train.size();
    out.result.validation_size = split.validation.size();
    out.result.test_size = split.test.size();
    const std::uint64_t seed = mix_seed(spec_.seed, static_cast<std::uint64_t>(spec_.kind), f);

    const auto train_y = gather(labels_, split.train);
    switch (spec_.kind) {
      case ClassifierKind::random:
        out.test_predictions = baselines::random_predict(split.test.size(), seed);
        break;
      case ClassifierKind::svm_tfidf: {
        const auto train_docs = gather(tokens_, split.train);
        const auto tfidf = baselines::TfidfModel::fit(train_docs);
        auto cfg = spec_.svm;
        cfg.seed = seed;
        const auto svm = baselines::LinearSvm::train(tfidf.transform_all(train_docs), train_y, cfg);
        if (!svm.converged()) out.result.warnings.push_back("SVM stopped at the epoch limit");
        out.test_predictions = svm.predict(tfidf.transform_all(gather(tokens_, split.test)));
        break;
      }
      case ClassifierKind::svm_we: {
        auto cfg = spec_.svm;
        cfg.seed = seed;
        const auto svm = baselines::LinearSvm::train(gather_rows(swe_, split.train), train_y, cfg);
        if (!svm.converged()) out.result.warnings.push_back("SVM stopped at the epoch limit");
        out.test_predictions = svm.predict(gather_rows(swe_, split.test));
        break;
      }
      case ClassifierKind::cnn: {
        auto cfg = spec_.cnn;
        cfg.seed = seed;
        const auto train_docs = gather(tokens_, split.train);
        const std::size_t k = cnn::pad_length_for(train_docs, cfg);
        const auto train_x = cnn::build_tweet_matrices(train_docs, *embeddings_, k);
        const auto val_x = cnn::build_tweet_matrices(gather(tokens_, split.validation), *embeddings_, k);
        const auto val_y = gather(labels_, split.validation);
        auto trained = cnn::train(train_x, train_y, val_x, val_y, embeddings_->dimension(), k, cfg);
        out.result.best_epoch = trained.best_epoch;
        out.result.warnings = std::move(trained.warnings);
        for (auto i : split.test) {
          const auto tm = cnn::build_tweet_matrix(tokens_[i], *embeddings_, k);
          out.test_predictions.push_back(cnn::predict(trained.model, tm));
        }
        break;
      }
    }

    const auto test_y = gather(labels_, split.test);
    out.result.metrics = metrics(out.test_predictions, test_y);
    out.result.macro = macro_metrics(out.test_predictions, test_y);
    out.result.accuracy = accuracy(out.test_predictions, test_y);
    return out;
  }

  const std::vector<Label>& labels() const { return labels_; }

 private:
  const ClassifierSpec& spec_;
  const embeddings::EmbeddingLookup* embeddings_;
  std::vector<Label> labels_;
  std::vector<std::vector<std::string>> tokens_;
  baselines::FeatureSet swe_;
};

}  // namespace

EvalReport run_experiment(const corpus::LabeledDataset& dataset, const ClassifierSpec& spec,
                          const embeddings::EmbeddingLookup* embeddings, const FoldPlan& folds,
                          std::size_t workers) {
  if (needs_embeddings(spec.kind) && embeddings == nullptr) {
    throw InvalidArgument("classifier " + to_string(spec.kind) + " requires embeddings");
  }
  const auto assignment = folds.assignment(dataset.size());
  if (std::count(assignment.begin(), assignment.end(), kPartitionCount) != 0) {
    throw InvalidArgument("fold plan does not cover the dataset");
  }

  const FoldRunner runner(dataset, spec, embeddings);
  const std::size_t n_folds = folds.fold_count();
  std::vector<FoldOutput> outputs(n_folds);
  detail::parallel_for(n_folds, workers, [&](std::size_t f) { outputs[f] = runner.run(folds, f); });

  EvalReport report;
  report.classifier = to_string(spec.kind);
  report.gold = runner.labels();
  report.predictions.assign(dataset.size(), Label::negative);
  const double inv = 1.0 / static_cast<double>(n_folds);
  for (std::size_t f = 0; f < n_folds; ++f) {
    const auto& test = folds.partitions[f];
    for (std::size_t j = 0; j < test.size(); ++j) report.predictions[test[j]] = outputs[f].test_predictions[j];
    const auto& r = outputs[f].result;
    report.mean.precision += inv * r.metrics.precision;
    report.mean.recall += inv * r.metrics.recall;
    report.mean.f1 += inv * r.metrics.f1;
    report.mean.degenerate = report.mean.degenerate || r.metrics.degenerate;
    report.macro_mean.precision += inv * r.macro.precision;
    report.macro_mean.recall += inv * r.macro.recall;
    report.macro_mean.f1 += inv * r.macro.f1;
    report.macro_mean.degenerate = report.macro_mean.degenerate || r.macro.degenerate;
    report.mean_accuracy += inv * r.accuracy;
    report.folds.push_back(std::move(outputs[f].result));
  }
  return report;
}

}  // namespace wecnn::eval
