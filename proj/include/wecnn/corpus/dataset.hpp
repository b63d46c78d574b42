#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "wecnn/common.hpp"
#include "wecnn/corpus/preprocess.hpp"

namespace wecnn::corpus {

struct Instance {
  std::string text;
  std::vector<std::string> tokens;
  Label label = Label::negative;
};

struct LabeledDataset {
  std::vector<Instance> instances;

  std::size_t size() const { return instances.size(); }
  std::size_t count(Label label) const;
  std::vector<Label> labels() const;
  /// Unique token surfaces across all instances.
  std::set<std::string> vocabulary() const;
};

/// Parses `label<TAB>text` lines (label 1 or 0) or JSON lines with `text` and
/// `label` fields. Blank lines are skipped. Errors name the offending line.
LabeledDataset parse_dataset(std::istream& in, const Preprocessor& preprocessor,
                             const std::string& source_name = "<stream>");

LabeledDataset load_dataset(const std::filesystem::path& path, const Preprocessor& preprocessor);

Label parse_label(std::string_view text);

}  // namespace wecnn::corpus
