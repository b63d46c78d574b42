#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wecnn/eval/experiment.hpp"

namespace wecnn::eval {

nlohmann::json to_json(const Metrics& m);
Metrics metrics_from_json(const nlohmann::json& j);

/// One record per fold followed by a summary record.
void write_report_jsonl(const EvalReport& report, std::ostream& out);

/// `index<TAB>gold<TAB>predicted` per instance, labels as 1/0.
void write_predictions(const EvalReport& report, std::ostream& out);
void save_predictions(const EvalReport& report, const std::filesystem::path& path);

struct PredictionFile {
  std::vector<Label> gold;
  std::vector<Label> predicted;
};

/// Indices must run 0, 1, 2, ... in order. Errors name the line.
PredictionFile read_predictions(std::istream& in, const std::string& source_name = "<stream>");
PredictionFile load_predictions(const std::filesystem::path& path);

}  // namespace wecnn::eval
