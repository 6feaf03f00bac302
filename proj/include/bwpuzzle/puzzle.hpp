#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bwpuzzle/bitstring.hpp"
#include "bwpuzzle/crypto.hpp"
#include "bwpuzzle/params.hpp"
#include "bwpuzzle/random.hpp"

namespace bwpuzzle {

/// The challenged content: exactly N bits, 0-based indices.
class Content {
public:
    Content() = default;
    explicit Content(BitString bits) : bits_(std::move(bits)) {}

    static Content random(std::uint64_t N, Rng& rng);
    /// Raw packed bits; the file must hold exactly ceil(N/8) bytes.
    static Content load(const std::filesystem::path& path, std::uint64_t N);
    void save(const std::filesystem::path& path) const;

    std::uint64_t size() const { return bits_.size(); }
    bool get(std::uint64_t i) const { return bits_.get(i); }
    const BitString& bits() const { return bits_; }

private:
    BitString bits_;
};

struct IndexSet {
    std::uint64_t ordinal = 0;              ///< j in [1, L]
    std::vector<std::uint64_t> indices;     ///< n content indices, repeats allowed
};

struct Puzzle {
    Key k1;
    Digest hint;
    PuzzleParams params;

    static constexpr std::uint8_t kVersion = 1;
    /// version || params || k1 || hint
    Bytes serialize() const;
    void serialize_into(Bytes& out) const;
    static Puzzle deserialize(ByteView data);
    static Puzzle read(ByteReader& in);
    std::size_t serialized_size() const { return 1 + PuzzleParams::kEncodedSize + k1.size() + hint.size(); }

    friend bool operator==(const Puzzle&, const Puzzle&) = default;
};

/// Verifier-side secret paired with a Puzzle.
struct PuzzleSecret {
    std::uint64_t j_star = 0;
    Digest answer;

    Bytes serialize() const;
    static PuzzleSecret read(ByteReader& in);

    friend bool operator==(const PuzzleSecret&, const PuzzleSecret&) = default;
};

struct Solution {
    Digest answer;

    Bytes serialize() const;
    static Solution read(ByteReader& in);

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Order in which a solver tries index sets. Sequential unless a
/// permutation of [1, L] is supplied.
class SolverOrder {
public:
    static SolverOrder sequential() { return {}; }
    static SolverOrder permuted(std::uint64_t L, Rng& rng);
    static SolverOrder explicit_order(std::vector<std::uint64_t> ordinals);

    /// The j to try at attempt `step` (0-based).
    std::uint64_t at(std::size_t step) const { return ordinals_.empty() ? step + 1 : ordinals_[step]; }
    bool is_sequential() const { return ordinals_.empty(); }
    std::size_t size() const { return ordinals_.size(); }

private:
    std::vector<std::uint64_t> ordinals_;
};

struct GeneratedPuzzle {
    Puzzle puzzle;
    PuzzleSecret secret;
};

struct SolveResult {
    Solution solution;
    std::uint64_t hash_queries = 0;
    std::uint64_t ordinal = 0;  ///< the confirming j
};

/// Draws k1 and j*, expands only the answer set, and returns the puzzle
/// with its verifier-side secret.
GeneratedPuzzle generate_puzzle(const PuzzleParams& params, const Content& content, Rng& rng,
                                const Primitives& prims = Primitives::standard());

IndexSet index_set(const PuzzleParams& params, const Key& k1, std::uint64_t j,
                   const Primitives& prims = Primitives::standard());

BitString true_string(const Content& content, const IndexSet& iset);

/// Honest solver. Throws MalformedPuzzleError if no set confirms.
SolveResult solve(const Puzzle& puzzle, const Content& content, const SolverOrder& order = SolverOrder::sequential(),
                  const Primitives& prims = Primitives::standard());

bool verify(const PuzzleSecret& secret, const Solution& submitted);

}  // namespace bwpuzzle
