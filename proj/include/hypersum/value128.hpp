#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypersum {

/// 128-bit unsigned arithmetic type shared by secret values, masks, salts
/// and cumulative sums. Secrets stay below 2^32 and masks/salts below 2^53,
/// so sums over any supported group size fit without wraparound.
using u128 = unsigned __int128;

inline constexpr u128 kSecretBound = u128{1} << 32;
inline constexpr u128 kSaltBound = u128{1} << 53;

/// Canonical big-endian 16-byte encoding.
std::array<std::uint8_t, 16> to_be_bytes(u128 value);
u128 from_be_bytes(std::span<const std::uint8_t, 16> bytes);

/// 32 lowercase hex characters (the canonical encoding, hex-rendered).
std::string to_hex32(u128 value);
u128 u128_from_hex(std::string_view hex);

std::string to_dec_string(u128 value);
u128 u128_from_dec(std::string_view text);

std::string bytes_to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> hex_to_bytes(std::string_view hex);

}  // namespace hypersum
