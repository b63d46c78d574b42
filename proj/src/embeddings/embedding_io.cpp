#include "wecnn/embeddings/embedding_io.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>
#include <sstream>

#include "wecnn/common.hpp"
#include "wecnn/numeric_io.hpp"

namespace wecnn::embeddings {

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

void write_embeddings(const EmbeddingMatrix& matrix, std::ostream& out) {
  out << matrix.rows() << ' ' << matrix.dimension() << '\n';
  std::string line;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    line = matrix.vocab().token(r);
    for (double v : matrix.row(r)) {
      line.push_back(' ');
      line += format_double(v);
    }
    line.push_back('\n');
    out << line;
  }
}

void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write embeddings: " + path.string());
  write_embeddings(matrix, out);
  if (!out) throw IoError("write failed: " + path.string());
}

EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source_name) {
  const auto fail = [&](std::size_t line_no, const std::string& what) -> ParseError {
    return ParseError(source_name + ":" + std::to_string(line_no) + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_spaces(line);
  std::size_t rows = 0, dim = 0;
  if (header.size() != 2 || !parse_size(header[0], rows) || !parse_size(header[1], dim) || dim == 0) {
    throw fail(1, "malformed header, expected '<vocab_size> <dimension>'");
  }

  std::vector<corpus::VocabEntry> entries;
  std::vector<double> values;
  entries.reserve(rows);
  values.reserve(rows * dim);
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_spaces(line);
    if (entries.size() == rows) throw fail(line_no, "more rows than the header declares");
    if (fields.size() != dim + 1) {
      throw fail(line_no, "expected " + std::to_string(dim) + " values, found " +
                              std::to_string(fields.empty() ? 0 : fields.size() - 1));
    }
    std::string token(fields[0]);
    if (!seen.emplace(token, line_no).second) throw fail(line_no, "duplicate token '" + token + "'");
    for (std::size_t i = 1; i <= dim; ++i) {
      double v;
      if (!parse_double(fields[i], v) || !std::isfinite(v)) {
        throw fail(line_no, "invalid number '" + std::string(fields[i]) + "'");
      }
      values.push_back(v);
    }
    entries.push_back({std::move(token), 0});
  }
  if (entries.size() != rows) {
    throw fail(line_no, "header declares " + std::to_string(rows) + " rows, found " +
                            std::to_string(entries.size()));
  }
  EmbeddingConfig config;
  config.dimension = dim;
  config.min_frequency = 0;
  return EmbeddingMatrix(corpus::Vocabulary::from_ordered(std::move(entries)), std::move(values), {},
                         config);
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings: " + path.string());
  return read_embeddings(in, path.string());
}

std::set<std::string> load_embedding_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ":1: malformed header");
  std::set<std::string> vocab;
  while (std::getline(in, line)) {
    const auto end = line.find(' ');
    if (end == 0 || line.empty()) continue;
    vocab.insert(line.substr(0, end));
  }
  return vocab;
}

}  // namespace wecnn::embeddings
