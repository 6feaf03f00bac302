#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bwpuzzle {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

void put_be16(Bytes& out, std::uint16_t v);
void put_be32(Bytes& out, std::uint32_t v);
void put_be64(Bytes& out, std::uint64_t v);

std::uint16_t get_be16(ByteView in, std::size_t offset);
std::uint32_t get_be32(ByteView in, std::size_t offset);
std::uint64_t get_be64(ByteView in, std::size_t offset);

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

// Sequential big-endian reader; throws ProtocolError on underrun.
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView take(std::size_t count);

    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t count) const;

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace bwpuzzle
