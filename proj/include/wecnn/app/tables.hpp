#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wecnn/corpus/coverage.hpp"

namespace wecnn::app {

/// 1234567 -> "1,234,567"
std::string format_count(std::size_t n);

/// Whole percent, truncated: 0.6676 -> "66%".
std::string truncated_percent(double fraction);

struct CoverageColumn {
  std::string name;
  std::size_t vocabulary_size = 0;
  corpus::CoverageReport report;
};

/// Rows: Vocabulary Size, Word Coverage Count, Word Coverage Rate.
std::string render_coverage_table(const std::vector<CoverageColumn>& columns);

/// Handles / Hashtags / Others / Total for words covered only by `name`.
std::string render_exclusive_table(const std::string& name, const corpus::ExclusiveCounts& counts);

/// Left-aligned first column, right-aligned remaining columns.
std::string render_grid(const std::vector<std::vector<std::string>>& rows);

}  // namespace wecnn::app
