#include "bwpuzzle/bitstring.hpp"

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

BitString::BitString(std::size_t bit_count) : bytes_(packed_size(bit_count), 0), bit_count_(bit_count) {}

BitString BitString::from_packed(Bytes packed, std::size_t bit_count) {
    if (packed.size() != packed_size(bit_count))
        throw DomainError("packed size " + std::to_string(packed.size()) + " does not hold exactly " +
                          std::to_string(bit_count) + " bits");
    BitString s;
    s.bytes_ = std::move(packed);
    s.bit_count_ = bit_count;
    if (auto tail = bit_count % 8; tail != 0) s.bytes_.back() &= static_cast<std::uint8_t>(0xff << (8 - tail));
    return s;
}

BitString BitString::from_binary(std::string_view bits) {
    BitString s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw DomainError("binary string may only contain 0 and 1");
        s.set(i, bits[i] == '1');
    }
    return s;
}

void BitString::check_index(std::size_t i) const {
    if (i >= bit_count_)
        throw DomainError("bit index " + std::to_string(i) + " out of range [0, " + std::to_string(bit_count_) + ")");
}

bool BitString::get(std::size_t i) const {
    check_index(i);
    return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void BitString::set(std::size_t i, bool value) {
    check_index(i);
    auto mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
    if (value)
        bytes_[i / 8] |= mask;
    else
        bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
}

std::string BitString::to_binary() const {
    std::string out(bit_count_, '0');
    for (std::size_t i = 0; i < bit_count_; ++i)
        if (get(i)) out[i] = '1';
    return out;
}

}  // namespace bwpuzzle
