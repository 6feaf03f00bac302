#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>

#include "bwpuzzle/bitstring.hpp"
#include "bwpuzzle/bytes.hpp"
#include "bwpuzzle/params.hpp"

namespace bwpuzzle {

namespace detail {
template <class Tag>
class Octets {
public:
    Octets() = default;
    /// Length must be kappa/8 for some valid kappa (>= 160 bits).
    explicit Octets(Bytes bytes) : bytes_(std::move(bytes)) { validate_kappa(8 * bytes_.size()); }

    static Octets zero(std::uint64_t kappa) {
        validate_kappa(kappa);
        Octets o;
        o.bytes_.assign(kappa / 8, 0);
        return o;
    }
    static Octets from_hex(std::string_view hex) { return Octets(bwpuzzle::from_hex(hex)); }

    const Bytes& bytes() const { return bytes_; }
    std::size_t size() const { return bytes_.size(); }
    std::uint64_t kappa() const { return 8 * bytes_.size(); }
    bool is_zero() const {
        for (auto b : bytes_)
            if (b != 0) return false;
        return true;
    }
    std::string hex() const { return to_hex(bytes_); }

    friend bool operator==(const Octets&, const Octets&) = default;

private:
    Bytes bytes_;
};
}  // namespace detail

using Key = detail::Octets<struct KeyTag>;
using Digest = detail::Octets<struct DigestTag>;

// Domain-separation tags. H and A are prefixed by their tag; the PRFs use
// key || tag || counter.
inline constexpr std::uint8_t kTagH = 0x01;
inline constexpr std::uint8_t kTagA = 0x02;
inline constexpr std::uint8_t kTagF1 = 0x03;
inline constexpr std::uint8_t kTagF2 = 0x04;

/// Pluggable hash backend. `digest` fills `out` completely for any output length.
class HashFunction {
public:
    virtual ~HashFunction() = default;
    virtual void digest(ByteView message, std::span<std::uint8_t> out) const = 0;
    virtual std::string name() const = 0;
};

/// SHA-256 with counter-mode expansion past 32 bytes: block 0 is
/// SHA-256(msg), block b >= 1 is SHA-256(msg || be32(b)).
const HashFunction& sha256_backend();

struct QueryCounters {
    std::atomic<std::uint64_t> f1{0};
    std::atomic<std::uint64_t> f2{0};
    std::atomic<std::uint64_t> h{0};
    std::atomic<std::uint64_t> a{0};
};

/// The four keyed primitives of the construction. Stateless apart from the
/// optional counters; safe to share across threads.
class Primitives {
public:
    explicit Primitives(const HashFunction& hash = sha256_backend(), QueryCounters* counters = nullptr)
        : hash_(&hash), counters_(counters) {}

    static const Primitives& standard();

    /// Index-set key for set j in [1, L].
    Key f1(const Key& k1, std::uint64_t j, const PuzzleParams& params) const;
    /// Content index in [0, N) for position i in [1, n].
    std::uint64_t f2(const Key& k2, std::uint64_t i, const PuzzleParams& params) const;
    /// tag || k1 || be32(j) || be32(n) || packed(s)
    Digest hash_h(const Key& k1, std::uint64_t j, const BitString& s, const PuzzleParams& params) const;
    /// tag || be32(n) || packed(s), kappa bits out.
    Digest hash_a(const BitString& s, const PuzzleParams& params) const;

    const HashFunction& backend() const { return *hash_; }

private:
    const HashFunction* hash_;
    QueryCounters* counters_;
};

// Free-function forms over the standard SHA-256 instantiation.
Key prf_f1(const Key& k1, std::uint64_t j, const PuzzleParams& params);
std::uint64_t prf_f2(const Key& k2, std::uint64_t i, const PuzzleParams& params);
Digest hash_H(const Key& k1, std::uint64_t j, const BitString& s, const PuzzleParams& params);
Digest hash_A(const BitString& s, const PuzzleParams& params);

}  // namespace bwpuzzle
