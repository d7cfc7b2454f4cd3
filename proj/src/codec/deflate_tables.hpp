#pragma once

#include <array>
#include <cstdint>

namespace relicpress::codec::detail {

// RFC 1951 section 3.2.5.
inline constexpr std::array<std::uint16_t, 29> kLengthBase{
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 23, 27, 31, 35, 43, 51, 59, 67, 83, 99, 115, 131, 163, 195, 227, 258};
inline constexpr std::array<std::uint8_t, 29> kLengthExtra{
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
inline constexpr std::array<std::uint16_t, 30> kDistBase{
    1, 2, 3, 4, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129, 193, 257, 385, 513, 769,
    1025, 1537, 2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577};
inline constexpr std::array<std::uint8_t, 30> kDistExtra{
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};
inline constexpr std::array<std::uint8_t, 19> kCodeLengthOrder{
    16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15};

inline constexpr unsigned kEndOfBlock = 256;
inline constexpr unsigned kMaxBits = 15;
inline constexpr unsigned kWindow = 32768;

constexpr std::array<std::uint8_t, 288> fixed_literal_lengths() {
    std::array<std::uint8_t, 288> l{};
    for (unsigned i = 0; i < 144; ++i) l[i] = 8;
    for (unsigned i = 144; i < 256; ++i) l[i] = 9;
    for (unsigned i = 256; i < 280; ++i) l[i] = 7;
    for (unsigned i = 280; i < 288; ++i) l[i] = 8;
    return l;
}

constexpr std::array<std::uint8_t, 30> fixed_distance_lengths() {
    std::array<std::uint8_t, 30> l{};
    l.fill(5);
    return l;
}

}  // namespace relicpress::codec::detail
