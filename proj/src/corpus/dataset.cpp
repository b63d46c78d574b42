#include "wecnn/corpus/dataset.hpp"

#include <fstream>
#include "json.hpp"

namespace wecnn::corpus {

std::size_t LabeledDataset::count(Label label) const {
  std::size_t n = 0;
  for (const auto& inst : instances) n += inst.label == label;
  return n;
}

std::vector<Label> LabeledDataset::labels() const {
  std::vector<Label> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(inst.label);
  return out;
}

std::set<std::string> LabeledDataset::vocabulary() const {
  std::set<std::string> out;
  for (const auto& inst : instances) out.insert(inst.tokens.begin(), inst.tokens.end());
  return out;
}

Label parse_label(std::string_view text) {
  if (text == "1" || text == "positive" || text == "true") return Label::positive;
  if (text == "0" || text == "negative" || text == "false") return Label::negative;
  throw ParseError("invalid label '" + std::string(text) + "' (expected 1 or 0)");
}

namespace {

Label json_label(const nlohmann::json& v) {
  if (v.is_boolean()) return label_from_bool(v.get<bool>());
  if (v.is_number_integer()) {
    const auto n = v.get<long long>();
    if (n == 0 || n == 1) return label_from_bool(n == 1);
  }
  if (v.is_string()) return parse_label(v.get<std::string>());
  throw ParseError("invalid label " + v.dump());
}

}  // namespace

LabeledDataset parse_dataset(std::istream& in, const Preprocessor& preprocessor,
                             const std::string& source_name) {
  LabeledDataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto where = [&] { return source_name + ":" + std::to_string(line_no) + ": "; };
    Instance inst;
    try {
      if (line[line.find_first_not_of(" \t")] == '{') {
        const auto record = nlohmann::json::parse(line);
        if (!record.contains("text") || !record.contains("label")) {
          throw ParseError("record needs 'text' and 'label' fields");
        }
        inst.text = record.at("text").get<std::string>();
        inst.label = json_label(record.at("label"));
      } else {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("expected label<TAB>text");
        inst.label = parse_label(std::string_view(line).substr(0, tab));
        inst.text = line.substr(tab + 1);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where() + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where() + e.what());
    }
    inst.tokens = preprocessor.surfaces(inst.text);
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

LabeledDataset load_dataset(const std::filesystem::path& path, const Preprocessor& preprocessor) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path.string());
  return parse_dataset(in, preprocessor, path.string());
}

}  // namespace wecnn::corpus
