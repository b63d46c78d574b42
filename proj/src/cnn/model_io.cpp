#include "wecnn/cnn/model_io.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <algorithm>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "wecnn/common.hpp"

namespace wecnn::cnn {

namespace {

constexpr char kMagic[4] = {'C', 'N', 'N', '1'};
constexpr std::size_t kMaxHeaderValue = std::numeric_limits<std::int32_t>::max();

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_i32(std::vector<unsigned char>& out, std::size_t v) {
  if (v > kMaxHeaderValue) throw InvalidArgument("model dimension too large to serialize");
  put_u32(out, static_cast<std::uint32_t>(v));
}

void put_f64(std::vector<unsigned char>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

std::uint32_t crc_of(const unsigned char* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

class Reader {
 public:
  Reader(const unsigned char* data, std::size_t size) : data_(data), size_(size) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::size_t dim(const char* what) {
    const auto v = static_cast<std::int32_t>(u32());
    if (v < 0) throw ParseError(std::string("negative ") + what + " in model header");
    return static_cast<std::size_t>(v);
  }

  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(bits);
  }

  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) throw ParseError("unexpected end of model file");
  }

  const unsigned char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_model(const CnnModel& model, std::ostream& out) {
  const auto& cfg = model.config();
  std::vector<unsigned char> payload;
  put_i32(payload, model.embedding_dim());
  put_i32(payload, model.pad_length());
  put_i32(payload, cfg.filter_sizes.size());
  for (auto m : cfg.filter_sizes) put_i32(payload, m);
  put_i32(payload, cfg.filters_per_size);
  put_i32(payload, kClassCount);
  put_i32(payload, cfg.stride);
  model.parameters().for_each_tensor([&](std::span<const double> t, bool) {
    for (double v : t) put_f64(payload, v);
  });
  put_u32(payload, crc_of(payload.data(), payload.size()));

  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("failed to write model");
}

void save_model(const CnnModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_model(model, out);
  out.close();
  if (!out) throw IoError("failed to write " + path.string());
}

CnnModel read_model(std::istream& in) {
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < sizeof kMagic) throw ParseError("unexpected end of model file");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw ParseError("not a model file (bad magic or unsupported version)");
  }
  const unsigned char* body = bytes.data() + sizeof kMagic;
  const std::size_t body_size = bytes.size() - sizeof kMagic;
  // Trailing four bytes hold the checksum of everything before them.
  const bool checksum_ok =
      body_size >= 4 &&
      crc_of(body, body_size - 4) == Reader(body + body_size - 4, 4).u32();

  Reader r(body, checksum_ok ? body_size - 4 : body_size);
  CnnConfig cfg;
  const std::size_t n = r.dim("dimension");
  const std::size_t k = r.dim("pad length");
  const std::size_t sizes = r.dim("filter size count");
  if (sizes > body_size) throw ParseError("unexpected end of model file");
  cfg.filter_sizes.clear();
  for (std::size_t i = 0; i < sizes; ++i) cfg.filter_sizes.push_back(r.dim("filter size"));
  cfg.filters_per_size = r.dim("filters per size");
  const std::size_t classes = r.dim("class count");
  cfg.stride = r.dim("stride");
  if (classes != kClassCount) {
    throw ParseError("unsupported class count " + std::to_string(classes));
  }

  try {
    cfg.validate(k);
    if (n < 1) throw InvalidArgument("embedding dimension must be >= 1");
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid model header: ") + e.what());
  }

  // Products of 31-bit header fields can exceed 64 bits.
  unsigned __int128 wide = 0;
  for (auto m : cfg.filter_sizes) {
    wide += static_cast<unsigned __int128>(cfg.filters_per_size) *
            (static_cast<unsigned __int128>(m) * n + 1);
  }
  wide += static_cast<unsigned __int128>(cfg.feature_count()) * kClassCount + kClassCount;
  if (wide > body_size) throw ParseError("unexpected end of model file");
  const auto expected = static_cast<std::size_t>(wide);
  const std::size_t available = (checksum_ok ? body_size - 4 : body_size) - r.position();
  if (!checksum_ok) {
    if (available < expected * 8) throw ParseError("unexpected end of model file");
    throw ParseError("model file checksum mismatch");
  }
  if (available != expected * 8) {
    throw ParseError("model tensor data holds " + std::to_string(available / 8) +
                     " values but the header declares " + std::to_string(expected));
  }

  CnnParameters params;
  for (auto m : cfg.filter_sizes) {
    FilterBank bank;
    bank.width = m;
    bank.count = cfg.filters_per_size;
    bank.weights.resize(bank.count * m * n);
    bank.bias.resize(bank.count);
    params.banks.push_back(std::move(bank));
  }
  params.softmax_weights.resize(cfg.feature_count() * kClassCount);
  params.softmax_bias.resize(kClassCount);
  params.for_each_tensor([&](std::span<double> t, bool) {
    for (auto& v : t) v = r.f64();
  });
  try {
    return CnnModel(cfg, n, k, std::move(params));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid model header: ") + e.what());
  }
}

CnnModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_model(in);
}

}  // namespace wecnn::cnn
