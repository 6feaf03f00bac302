#pragma once

#include <cstdint>
#include <string>

#include "bwpuzzle/bytes.hpp"

namespace bwpuzzle {

/// Public parameters of a puzzle family.
struct PuzzleParams {
    std::uint64_t N = 0;          ///< content size in bits
    std::uint64_t n = 0;          ///< indices per index set
    std::uint64_t L = 0;          ///< index sets per puzzle
    std::uint64_t m = 1;          ///< puzzles per challenge
    std::uint64_t theta_ms = 0;   ///< time threshold, milliseconds
    std::uint64_t kappa = 256;    ///< security parameter, bits

    std::size_t kappa_bytes() const { return static_cast<std::size_t>(kappa / 8); }

    /// Throws DomainError when an invariant fails. n and L must also fit the
    /// 4-byte fields of the hash encoding.
    void validate() const;

    static constexpr std::size_t kEncodedSize = 6 * 8;
    void encode(Bytes& out) const;
    static PuzzleParams decode(ByteReader& in);

    /// "N,n,L,m,theta,kappa" as accepted by the command line.
    static PuzzleParams parse(const std::string& csv);
    std::string to_string() const;

    friend bool operator==(const PuzzleParams&, const PuzzleParams&) = default;
};

void validate_kappa(std::uint64_t kappa);

}  // namespace bwpuzzle
