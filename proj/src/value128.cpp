#include "hypersum/value128.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hypersum {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex character");
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::array<std::uint8_t, 16> to_be_bytes(u128 value) {
    std::array<std::uint8_t, 16> out{};
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value & 0xff);
        value >>= 8;
    }
    return out;
}

u128 from_be_bytes(std::span<const std::uint8_t, 16> bytes) {
    u128 value = 0;
    for (std::uint8_t b : bytes) {
        value = (value << 8) | b;
    }
    return value;
}

std::string to_hex32(u128 value) {
    return bytes_to_hex(to_be_bytes(value));
}

u128 u128_from_hex(std::string_view hex) {
    if (hex.empty() || hex.size() > 32) {
        throw std::invalid_argument("hex value must be 1..32 digits");
    }
    u128 value = 0;
    for (char c : hex) {
        value = (value << 4) | static_cast<unsigned>(hex_nibble(c));
    }
    return value;
}

std::string to_dec_string(u128 value) {
    if (value == 0) return "0";
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 u128_from_dec(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty decimal value");
    u128 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("invalid decimal character");
        u128 next = value * 10 + static_cast<unsigned>(c - '0');
        if (next < value) throw std::out_of_range("decimal value exceeds 128 bits");
        value = next;
    }
    return value;
}

std::string bytes_to_hex(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

std::vector<std::uint8_t> hex_to_bytes(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(hex_nibble(hex[2 * i]) << 4 |
                                           hex_nibble(hex[2 * i + 1]));
    }
    return out;
}

}  // namespace hypersum
