#include "wecnn/app/config.hpp"

#include <fstream>
#include <set>

#include "wecnn/common.hpp"

namespace wecnn::app {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw InvalidArgument("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_path(const json& j, const char* key, std::filesystem::path& out) {
  if (j.contains(key)) out = j.at(key).get<std::string>();
}

json embedding_json(const embeddings::EmbeddingConfig& e) {
  return {{"batch_size", e.batch_size},         {"negative_samples", e.negative_samples},
          {"min_frequency", e.min_frequency},   {"iterations", e.iterations},
          {"learning_rate", e.learning_rate},   {"dynamic_window", e.dynamic_window},
          {"subsample", e.subsample},           {"sigmoid_table", e.sigmoid_table},
          {"workers", e.workers}};
}

void embedding_from(const json& j, embeddings::EmbeddingConfig& e) {
  reject_unknown(j,
                 {"batch_size", "negative_samples", "min_frequency", "iterations", "learning_rate",
                  "dynamic_window", "subsample", "sigmoid_table", "workers"},
                 "embedding");
  read(j, "batch_size", e.batch_size);
  read(j, "negative_samples", e.negative_samples);
  read(j, "min_frequency", e.min_frequency);
  read(j, "iterations", e.iterations);
  read(j, "learning_rate", e.learning_rate);
  read(j, "dynamic_window", e.dynamic_window);
  read(j, "subsample", e.subsample);
  read(j, "sigmoid_table", e.sigmoid_table);
  read(j, "workers", e.workers);
}

json cnn_json(const cnn::CnnConfig& c) {
  return {{"filter_sizes", c.filter_sizes},
          {"filters_per_size", c.filters_per_size},
          {"stride", c.stride},
          {"keep_probability", c.keep_probability},
          {"l2_lambda", c.l2_lambda},
          {"batch_size", c.batch_size},
          {"max_epochs", c.max_epochs},
          {"optimizer", c.optimizer == cnn::OptimizerKind::sgd ? "sgd" : "adadelta"},
          {"adadelta_rho", c.adadelta_rho},
          {"adadelta_epsilon", c.adadelta_epsilon},
          {"sgd_learning_rate", c.sgd_learning_rate},
          {"init_range", c.init_range}};
}

void cnn_from(const json& j, cnn::CnnConfig& c) {
  reject_unknown(j,
                 {"filter_sizes", "filters_per_size", "stride", "keep_probability", "l2_lambda",
                  "batch_size", "max_epochs", "optimizer", "adadelta_rho", "adadelta_epsilon",
                  "sgd_learning_rate", "init_range"},
                 "cnn");
  read(j, "filter_sizes", c.filter_sizes);
  read(j, "filters_per_size", c.filters_per_size);
  read(j, "stride", c.stride);
  read(j, "keep_probability", c.keep_probability);
  read(j, "l2_lambda", c.l2_lambda);
  read(j, "batch_size", c.batch_size);
  read(j, "max_epochs", c.max_epochs);
  if (j.contains("optimizer")) {
    const auto name = j.at("optimizer").get<std::string>();
    if (name == "adadelta") c.optimizer = cnn::OptimizerKind::adadelta;
    else if (name == "sgd") c.optimizer = cnn::OptimizerKind::sgd;
    else throw InvalidArgument("unknown optimizer '" + name + "'");
  }
  read(j, "adadelta_rho", c.adadelta_rho);
  read(j, "adadelta_epsilon", c.adadelta_epsilon);
  read(j, "sgd_learning_rate", c.sgd_learning_rate);
  read(j, "init_range", c.init_range);
}

json svm_json(const baselines::SvmConfig& s) {
  return {{"c", s.c},
          {"loss", baselines::to_string(s.loss)},
          {"tolerance", s.tolerance},
          {"max_epochs", s.max_epochs}};
}

void svm_from(const json& j, baselines::SvmConfig& s) {
  reject_unknown(j, {"c", "loss", "tolerance", "max_epochs"}, "svm");
  read(j, "c", s.c);
  if (j.contains("loss")) s.loss = baselines::parse_svm_loss(j.at("loss").get<std::string>());
  read(j, "tolerance", s.tolerance);
  read(j, "max_epochs", s.max_epochs);
}

}  // namespace

void ExperimentConfig::validate(bool check_paths) const {
  if (windows.empty() || dimensions.empty()) throw InvalidArgument("embedding grid is empty");
  for (auto w : windows) {
    if (w < 1) throw InvalidArgument("windows must be >= 1");
  }
  for (auto d : dimensions) {
    if (d < 1) throw InvalidArgument("dimensions must be >= 1");
  }
  if (classifiers.empty()) throw InvalidArgument("classifier list is empty");
  (void)classifier_kinds();
  if (preprocessing != "spanish" && preprocessing != "none") {
    throw InvalidArgument("preprocessing must be 'spanish' or 'none'");
  }
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  embedding_config(windows.front(), dimensions.front()).validate();
  svm.validate();
  cnn.validate(cnn.max_filter_size());
  if (check_paths) {
    if (dataset.empty()) throw InvalidArgument("no dataset given");
    if (!std::filesystem::exists(dataset)) throw IoError("dataset not found: " + dataset.string());
    for (const auto& c : corpora) {
      if (!std::filesystem::exists(c)) throw IoError("corpus not found: " + c.string());
    }
    if (!stopwords.empty() && !std::filesystem::exists(stopwords)) {
      throw IoError("stop-word file not found: " + stopwords.string());
    }
  }
}

corpus::Preprocessor ExperimentConfig::preprocessor() const {
  if (preprocessing == "none") return corpus::Preprocessor::pretokenized();
  if (stopwords.empty()) return corpus::Preprocessor::spanish();
  return corpus::Preprocessor(corpus::StopWords::load(stopwords),
                              std::make_shared<corpus::SpanishSnowballStemmer>());
}

std::filesystem::path ExperimentConfig::embeddings_directory() const {
  return embedding_dir.empty() ? output_dir / "embeddings" : embedding_dir;
}

std::vector<eval::ClassifierKind> ExperimentConfig::classifier_kinds() const {
  std::vector<eval::ClassifierKind> out;
  for (const auto& c : classifiers) out.push_back(eval::parse_classifier(c));
  return out;
}

embeddings::EmbeddingConfig ExperimentConfig::embedding_config(std::size_t window,
                                                               std::size_t dimension) const {
  auto e = embedding;
  e.window = window;
  e.dimension = dimension;
  e.seed = seed;
  return e;
}

eval::ClassifierSpec ExperimentConfig::classifier_spec(eval::ClassifierKind kind) const {
  eval::ClassifierSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  spec.svm = svm;
  spec.cnn = cnn;
  return spec;
}

json to_json(const ExperimentConfig& c) {
  std::vector<std::string> corpora;
  for (const auto& p : c.corpora) corpora.push_back(p.string());
  return {{"dataset", c.dataset.string()},
          {"corpora", corpora},
          {"preprocessing", c.preprocessing},
          {"stopwords", c.stopwords.string()},
          {"windows", c.windows},
          {"dimensions", c.dimensions},
          {"classifiers", c.classifiers},
          {"seed", c.seed},
          {"output_dir", c.output_dir.string()},
          {"embedding_dir", c.embedding_dir.string()},
          {"workers", c.workers},
          {"embedding", embedding_json(c.embedding)},
          {"cnn", cnn_json(c.cnn)},
          {"svm", svm_json(c.svm)}};
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"dataset", "corpora", "preprocessing", "stopwords", "windows", "dimensions",
                  "classifiers", "seed", "output_dir", "embedding_dir", "workers", "embedding",
                  "cnn", "svm"},
                 "config");
  ExperimentConfig c;
  try {
    read_path(j, "dataset", c.dataset);
    if (j.contains("corpora")) {
      c.corpora.clear();
      for (const auto& p : j.at("corpora")) c.corpora.emplace_back(p.get<std::string>());
    }
    read(j, "preprocessing", c.preprocessing);
    read_path(j, "stopwords", c.stopwords);
    read(j, "windows", c.windows);
    read(j, "dimensions", c.dimensions);
    read(j, "classifiers", c.classifiers);
    read(j, "seed", c.seed);
    read_path(j, "output_dir", c.output_dir);
    read_path(j, "embedding_dir", c.embedding_dir);
    read(j, "workers", c.workers);
    if (j.contains("embedding")) embedding_from(j.at("embedding"), c.embedding);
    if (j.contains("cnn")) cnn_from(j.at("cnn"), c.cnn);
    if (j.contains("svm")) svm_from(j.at("svm"), c.svm);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(config).dump(2) << '\n';
  if (!out) throw IoError("failed to write " + path.string());
}

std::string embedding_file_name(std::size_t window, std::size_t dimension) {
  return "emb_w" + std::to_string(window) + "_d" + std::to_string(dimension) + ".vec";
}

}  // namespace wecnn::app
