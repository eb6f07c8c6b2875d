#pragma once

// MAUP-TENSOR binary format, all integers little-endian:
//
//   bytes 0-3  "MAUP"
//   byte  4    version = 1
//   byte  5    dtype: 1 = f32, 2 = u8
//   byte  6    rank: 2 or 3
//   byte  7    reserved = 0
//   then rank x u32 dims, then the row-major payload (channel-major for rank 3).
//
// f32 rank 3 -> FeatureMap, f32 rank 2 -> ScalarMap, u8 rank 2 -> BitMask.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "maup/tensors.hpp"

namespace maup {

using Tensor = std::variant<FeatureMap, ScalarMap, BitMask>;

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kDtypeF32 = 1;
inline constexpr std::uint8_t kDtypeU8 = 2;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

Tensor load_tensor(const std::filesystem::path& path);
FeatureMap load_feature_map(const std::filesystem::path& path);
ScalarMap load_scalar_map(const std::filesystem::path& path);
BitMask load_bit_mask(const std::filesystem::path& path);

void save_tensor(const Tensor& t, const std::filesystem::path& path);

/// 8-bit binary PGM (P5), min-max normalized; a constant map is written as all zeros.
void write_pgm(const ScalarMap& map, const std::filesystem::path& path);

}  // namespace maup
