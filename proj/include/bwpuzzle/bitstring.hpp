#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "bwpuzzle/bytes.hpp"

namespace bwpuzzle {

/// Fixed-length bit sequence packed 8 bits per byte, MSB first within a byte:
/// bit i lives at `byte[i / 8] >> (7 - i % 8) & 1`. Pad bits in the last byte
/// are always zero, so two equal-length strings compare equal byte-wise.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t bit_count);

    /// Takes ownership of packed bytes; `packed.size()` must equal ceil(bit_count / 8).
    /// Pad bits are cleared.
    static BitString from_packed(Bytes packed, std::size_t bit_count);

    /// Parses a string of '0'/'1' characters.
    static BitString from_binary(std::string_view bits);

    std::size_t size() const { return bit_count_; }
    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);

    const Bytes& packed() const { return bytes_; }
    std::string to_binary() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    void check_index(std::size_t i) const;

    Bytes bytes_;
    std::size_t bit_count_ = 0;
};

inline std::size_t packed_size(std::size_t bit_count) { return (bit_count + 7) / 8; }

}  // namespace bwpuzzle
