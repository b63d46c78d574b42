#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "wecnn/embeddings/embedding_matrix.hpp"

namespace wecnn::embeddings {

/// Text format: `<vocab_size> <dimension>` then one `<token> <v_1> ... <v_D>`
/// line per word, values in shortest round-trip decimal form. Only input
/// vectors are stored.
void write_embeddings(const EmbeddingMatrix& matrix, std::ostream& out);
void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

/// Throws ParseError naming the line on a malformed header, wrong row length,
/// bad number, duplicate token or row-count mismatch.
EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source_name = "<stream>");
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// Token column of an embedding file without parsing the vectors.
std::set<std::string> load_embedding_vocabulary(const std::filesystem::path& path);

}  // namespace wecnn::embeddings
