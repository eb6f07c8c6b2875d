#include "maup/tensor_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "maup/errors.hpp"

namespace maup {
namespace {

constexpr std::size_t kHeaderBytes = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

void put_header(std::vector<std::uint8_t>& out, std::uint8_t dtype,
                std::initializer_list<int> dims) {
  out.insert(out.end(), {'M', 'A', 'U', 'P'});
  out.push_back(kFormatVersion);
  out.push_back(dtype);
  out.push_back(static_cast<std::uint8_t>(dims.size()));
  out.push_back(0);
  for (int d : dims) put_u32(out, static_cast<std::uint32_t>(d));
}

void put_floats(std::vector<std::uint8_t>& out, std::span<const float> values) {
  out.reserve(out.size() + values.size() * 4);
  for (float v : values) put_u32(out, std::bit_cast<std::uint32_t>(v));
}

std::vector<float> get_floats(std::span<const std::uint8_t> payload, std::size_t n) {
  std::vector<float> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = std::bit_cast<float>(get_u32(payload, i * 4));
    if (!std::isfinite(values[i])) {
      throw DataError("non-finite value at element " + std::to_string(i));
    }
  }
  return values;
}

const char* kind_name(const Tensor& t) {
  switch (t.index()) {
    case 0: return "FeatureMap";
    case 1: return "ScalarMap";
    default: return "BitMask";
  }
}

template <class T>
T expect(Tensor t, const std::filesystem::path& path) {
  if (auto* v = std::get_if<T>(&t)) return std::move(*v);
  throw TypeError(path.string() + ": file holds a " + kind_name(t));
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  std::vector<std::uint8_t> out;
  if (const auto* f = std::get_if<FeatureMap>(&t)) {
    put_header(out, kDtypeF32, {f->channels(), f->height(), f->width()});
    put_floats(out, f->data());
  } else if (const auto* s = std::get_if<ScalarMap>(&t)) {
    put_header(out, kDtypeF32, {s->height(), s->width()});
    put_floats(out, s->values());
  } else {
    const auto& m = std::get<BitMask>(t);
    put_header(out, kDtypeU8, {m.height(), m.width()});
    out.insert(out.end(), m.bits().begin(), m.bits().end());
  }
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw FormatError("truncated header");
  if (!std::equal(bytes.begin(), bytes.begin() + 4, "MAUP")) throw FormatError("bad magic");
  if (bytes[4] != kFormatVersion) {
    throw FormatError("unsupported version " + std::to_string(bytes[4]));
  }
  const std::uint8_t dtype = bytes[5];
  const std::uint8_t rank = bytes[6];
  if (dtype != kDtypeF32 && dtype != kDtypeU8) {
    throw FormatError("unknown dtype " + std::to_string(dtype));
  }
  if (rank != 2 && rank != 3) throw FormatError("unsupported rank " + std::to_string(rank));
  if (bytes[7] != 0) throw FormatError("reserved byte must be 0");
  if (dtype == kDtypeU8 && rank != 2) throw FormatError("u8 tensors must have rank 2");

  const std::size_t dims_end = kHeaderBytes + 4 * std::size_t{rank};
  if (bytes.size() < dims_end) throw FormatError("truncated dims");
  std::vector<int> dims(rank);
  std::size_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::uint32_t d = get_u32(bytes, kHeaderBytes + 4 * i);
    if (d == 0) throw FormatError("zero dimension");
    if (d > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
      throw FormatError("dimension too large");
    }
    dims[i] = static_cast<int>(d);
    count *= d;
    if (count > (std::size_t{1} << 40)) throw FormatError("tensor too large");
  }

  const std::size_t elem = dtype == kDtypeF32 ? 4 : 1;
  const auto payload = bytes.subspan(dims_end);
  if (payload.size() != count * elem) {
    throw FormatError("payload is " + std::to_string(payload.size()) + " bytes, expected " +
                      std::to_string(count * elem));
  }

  if (dtype == kDtypeU8) {
    std::vector<std::uint8_t> bits(payload.begin(), payload.end());
    return BitMask(dims[0], dims[1], std::move(bits));
  }
  if (rank == 3) return FeatureMap(dims[0], dims[1], dims[2], get_floats(payload, count));
  return ScalarMap(dims[0], dims[1], get_floats(payload, count));
}

Tensor load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_tensor(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

FeatureMap load_feature_map(const std::filesystem::path& path) {
  return expect<FeatureMap>(load_tensor(path), path);
}

ScalarMap load_scalar_map(const std::filesystem::path& path) {
  return expect<ScalarMap>(load_tensor(path), path);
}

BitMask load_bit_mask(const std::filesystem::path& path) {
  return expect<BitMask>(load_tensor(path), path);
}

void save_tensor(const Tensor& t, const std::filesystem::path& path) {
  const auto bytes = encode_tensor(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void write_pgm(const ScalarMap& map, const std::filesystem::path& path) {
  const auto values = map.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = static_cast<double>(*hi) - static_cast<double>(*lo);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << map.width() << ' ' << map.height() << "\n255\n";
  std::vector<char> pixels(values.size(), 0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = (static_cast<double>(values[i]) - *lo) / range;
      pixels[i] = static_cast<char>(static_cast<std::uint8_t>(std::lround(v * 255.0)));
    }
  }
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace maup
