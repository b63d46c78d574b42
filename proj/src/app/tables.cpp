#include "wecnn/app/tables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wecnn::app {

std::string format_count(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string truncated_percent(double fraction) {
  // The epsilon keeps exact ratios such as 0.29 from landing on 28%.
  return std::to_string(static_cast<long long>(std::floor(fraction * 100.0 + 1e-9))) + "%";
}

std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      if (c == 0) {
        line += r[c] + pad;
      } else {
        line += "  " + pad + r[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

std::string render_coverage_table(const std::vector<CoverageColumn>& columns) {
  std::vector<std::vector<std::string>> rows(4);
  rows[0].push_back("");
  rows[1].push_back("Vocabulary Size");
  rows[2].push_back("Word Coverage Count");
  rows[3].push_back("Word Coverage Rate");
  for (const auto& c : columns) {
    rows[0].push_back(c.name);
    rows[1].push_back(format_count(c.vocabulary_size));
    rows[2].push_back(format_count(c.report.covered_count));
    rows[3].push_back(truncated_percent(c.report.coverage_rate));
  }
  return render_grid(rows);
}

std::string render_exclusive_table(const std::string& name, const corpus::ExclusiveCounts& counts) {
  std::ostringstream out;
  out << "Vocabulary only covered by " << name << '\n';
  out << render_grid({{"Twitter handles", "Hashtags", "Others", "Total"},
                      {format_count(counts.handles), format_count(counts.hashtags),
                       format_count(counts.others), format_count(counts.total())}});
  return out.str();
}

}  // namespace wecnn::app
