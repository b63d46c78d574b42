#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wecnn/corpus/dataset.hpp"

namespace wecnn::app {

/// Two-topic corpus for end-to-end checks. Background documents draw from
/// their own topic pool or the shared pool; labeled documents also borrow a
/// few words from the opposite topic. Positive documents belong to topic A.
struct SyntheticSpec {
  std::size_t topic_size = 200;
  std::size_t shared_size = 100;
  std::size_t background_docs = 20000;
  std::size_t labeled_docs = 2000;
  double positive_share = 0.4;
  std::size_t min_length = 15;
  std::size_t max_length = 25;
  double background_own = 0.7;  // remainder shared
  double labeled_own = 0.35;
  double labeled_other = 0.05;  // remainder shared
  std::uint64_t seed = 1;
};

struct SyntheticData {
  std::vector<std::string> topic_a;
  std::vector<std::string> topic_b;
  std::vector<std::string> shared;
  std::vector<std::vector<std::string>> background;
  corpus::LabeledDataset labeled;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Background documents one per line; the labeled set as `label<TAB>text`.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& corpus_path,
                     const std::filesystem::path& dataset_path);

}  // namespace wecnn::app
