#include "bwpuzzle/bytes.hpp"

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

void put_be16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_be32(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_be64(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

namespace {
template <class T>
T read_be(ByteView in, std::size_t offset) {
    if (offset + sizeof(T) > in.size()) throw ProtocolError("read past end of buffer");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | in[offset + i]);
    return v;
}
}  // namespace

std::uint16_t get_be16(ByteView in, std::size_t offset) { return read_be<std::uint16_t>(in, offset); }
std::uint32_t get_be32(ByteView in, std::size_t offset) { return read_be<std::uint32_t>(in, offset); }
std::uint64_t get_be64(ByteView in, std::size_t offset) { return read_be<std::uint64_t>(in, offset); }

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 0xf]);
    }
    return s;
}

Bytes from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DomainError(std::string("invalid hex digit '") + c + "'");
    };
    if (hex.size() % 2 != 0) throw DomainError("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

void ByteReader::need(std::size_t count) const {
    if (count > remaining()) throw ProtocolError("truncated message");
}

std::uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint16_t ByteReader::u16() {
    need(2);
    auto v = get_be16(data_, pos_);
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u32() {
    need(4);
    auto v = get_be32(data_, pos_);
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    auto v = get_be64(data_, pos_);
    pos_ += 8;
    return v;
}

ByteView ByteReader::take(std::size_t count) {
    need(count);
    auto v = data_.subspan(pos_, count);
    pos_ += count;
    return v;
}

}  // namespace bwpuzzle
