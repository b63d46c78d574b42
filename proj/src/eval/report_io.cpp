#include "wecnn/eval/report_io.hpp"

#include <fstream>
#include <sstream>

#include "wecnn/numeric_io.hpp"

namespace wecnn::eval {

nlohmann::json to_json(const Metrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"degenerate", m.degenerate}};
}

Metrics metrics_from_json(const nlohmann::json& j) {
  Metrics m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.degenerate = j.value("degenerate", false);
  return m;
}

void write_report_jsonl(const EvalReport& report, std::ostream& out) {
  for (const auto& f : report.folds) {
    nlohmann::json j{{"type", "fold"},
                     {"classifier", report.classifier},
                     {"fold", f.fold},
                     {"positive", to_json(f.metrics)},
                     {"macro", to_json(f.macro)},
                     {"accuracy", f.accuracy},
                     {"train_size", f.train_size},
                     {"validation_size", f.validation_size},
                     {"test_size", f.test_size},
                     {"best_epoch", f.best_epoch},
                     {"warnings", f.warnings}};
    out << j.dump() << '\n';
  }
  nlohmann::json summary{{"type", "summary"},
                         {"classifier", report.classifier},
                         {"positive", to_json(report.mean)},
                         {"macro", to_json(report.macro_mean)},
                         {"accuracy", report.mean_accuracy},
                         {"instances", report.gold.size()}};
  out << summary.dump() << '\n';
  if (!out) throw IoError("failed to write report");
}

void write_predictions(const EvalReport& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.gold.size(); ++i) {
    out << i << '\t' << to_int(report.gold[i]) << '\t' << to_int(report.predictions[i]) << '\n';
  }
  if (!out) throw IoError("failed to write predictions");
}

void save_predictions(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_predictions(report, out);
}

PredictionFile read_predictions(std::istream& in, const std::string& source_name) {
  PredictionFile pf;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(source_name + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 3) fail("expected index<TAB>gold<TAB>predicted");
    std::size_t index = 0;
    if (!parse_size(fields[0], index)) fail("invalid index");
    if (index != pf.gold.size()) fail("expected index " + std::to_string(pf.gold.size()));
    try {
      pf.gold.push_back(corpus::parse_label(fields[1]));
      pf.predicted.push_back(corpus::parse_label(fields[2]));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return pf;
}

PredictionFile load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_predictions(in, path.string());
}

}  // namespace wecnn::eval
