#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "wecnn/cnn/model.hpp"

namespace wecnn::cnn {

/// Binary container: magic "CNN1"; little-endian int32 header
/// (n, k, number of filter sizes, each filter size, filters per size, class
/// count, stride); every tensor row-major as little-endian float64 in
/// CnnParameters::for_each_tensor order; CRC-32 of everything after the magic.
void write_model(const CnnModel& model, std::ostream& out);
void save_model(const CnnModel& model, const std::filesystem::path& path);

/// Throws ParseError on a bad magic, a truncated file ("unexpected end of
/// model file"), a checksum mismatch, or tensors that disagree with the header.
CnnModel read_model(std::istream& in);
CnnModel load_model(const std::filesystem::path& path);

}  // namespace wecnn::cnn
