#include "bwpuzzle/puzzle.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

Content Content::random(std::uint64_t N, Rng& rng) {
    Bytes packed(packed_size(N));
    for (std::size_t i = 0; i < packed.size(); i += 8) {
        std::uint64_t word = rng();
        for (std::size_t b = 0; b < 8 && i + b < packed.size(); ++b)
            packed[i + b] = static_cast<std::uint8_t>(word >> (56 - 8 * b));
    }
    return Content(BitString::from_packed(std::move(packed), N));
}

Content Content::load(const std::filesystem::path& path, std::uint64_t N) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open content file " + path.string());
    Bytes packed((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (packed.size() != packed_size(N))
        throw DomainError("content file " + path.string() + " has " + std::to_string(packed.size()) +
                          " bytes, expected " + std::to_string(packed_size(N)) + " for N = " + std::to_string(N));
    return Content(BitString::from_packed(std::move(packed), N));
}

void Content::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write content file " + path.string());
    out.write(reinterpret_cast<const char*>(bits_.packed().data()), static_cast<std::streamsize>(bits_.packed().size()));
}

void Puzzle::serialize_into(Bytes& out) const {
    out.push_back(kVersion);
    params.encode(out);
    out.insert(out.end(), k1.bytes().begin(), k1.bytes().end());
    out.insert(out.end(), hint.bytes().begin(), hint.bytes().end());
}

Bytes Puzzle::serialize() const {
    Bytes out;
    out.reserve(serialized_size());
    serialize_into(out);
    return out;
}

Puzzle Puzzle::read(ByteReader& in) {
    if (auto v = in.u8(); v != kVersion) throw ProtocolError("unsupported puzzle version " + std::to_string(v));
    Puzzle p;
    p.params = PuzzleParams::decode(in);
    auto kb = p.params.kappa_bytes();
    auto key = in.take(kb);
    p.k1 = Key(Bytes(key.begin(), key.end()));
    auto hint = in.take(kb);
    p.hint = Digest(Bytes(hint.begin(), hint.end()));
    return p;
}

Puzzle Puzzle::deserialize(ByteView data) {
    ByteReader in(data);
    auto p = read(in);
    if (!in.done()) throw ProtocolError("trailing bytes after puzzle");
    return p;
}

Bytes PuzzleSecret::serialize() const {
    Bytes out;
    out.push_back(Puzzle::kVersion);
    put_be32(out, static_cast<std::uint32_t>(j_star));
    put_be16(out, static_cast<std::uint16_t>(answer.size()));
    out.insert(out.end(), answer.bytes().begin(), answer.bytes().end());
    return out;
}

namespace {
Digest read_digest(ByteReader& in) {
    auto len = in.u16();
    auto raw = in.take(len);
    try {
        return Digest(Bytes(raw.begin(), raw.end()));
    } catch (const DomainError& e) {
        throw ProtocolError(std::string("bad digest: ") + e.what());
    }
}
}  // namespace

PuzzleSecret PuzzleSecret::read(ByteReader& in) {
    if (auto v = in.u8(); v != Puzzle::kVersion) throw ProtocolError("unsupported secret version " + std::to_string(v));
    PuzzleSecret s;
    s.j_star = in.u32();
    s.answer = read_digest(in);
    return s;
}

Bytes Solution::serialize() const {
    Bytes out;
    out.push_back(Puzzle::kVersion);
    put_be16(out, static_cast<std::uint16_t>(answer.size()));
    out.insert(out.end(), answer.bytes().begin(), answer.bytes().end());
    return out;
}

Solution Solution::read(ByteReader& in) {
    if (auto v = in.u8(); v != Puzzle::kVersion) throw ProtocolError("unsupported solution version " + std::to_string(v));
    return Solution{read_digest(in)};
}

SolverOrder SolverOrder::permuted(std::uint64_t L, Rng& rng) {
    std::vector<std::uint64_t> ord(L);
    std::iota(ord.begin(), ord.end(), 1);
    // Fisher-Yates with the portable uniform_below.
    for (std::uint64_t i = L; i > 1; --i) std::swap(ord[i - 1], ord[uniform_below(rng, i)]);
    return explicit_order(std::move(ord));
}

SolverOrder SolverOrder::explicit_order(std::vector<std::uint64_t> ordinals) {
    auto sorted = ordinals;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i + 1) throw DomainError("solver order must be a permutation of [1, L]");
    SolverOrder o;
    o.ordinals_ = std::move(ordinals);
    return o;
}

IndexSet index_set(const PuzzleParams& params, const Key& k1, std::uint64_t j, const Primitives& prims) {
    Key k2 = prims.f1(k1, j, params);
    IndexSet set;
    set.ordinal = j;
    set.indices.resize(params.n);
    for (std::uint64_t i = 1; i <= params.n; ++i) set.indices[i - 1] = prims.f2(k2, i, params);
    return set;
}

BitString true_string(const Content& content, const IndexSet& iset) {
    BitString s(iset.indices.size());
    for (std::size_t i = 0; i < iset.indices.size(); ++i) {
        auto idx = iset.indices[i];
        if (idx >= content.size())
            throw DomainError("index " + std::to_string(idx) + " outside content of " + std::to_string(content.size()) +
                              " bits");
        s.set(i, content.get(idx));
    }
    return s;
}

namespace {
void check_content(const PuzzleParams& params, const Content& content) {
    params.validate();
    if (content.size() != params.N)
        throw DomainError("content has " + std::to_string(content.size()) + " bits but N = " + std::to_string(params.N));
}
}  // namespace

GeneratedPuzzle generate_puzzle(const PuzzleParams& params, const Content& content, Rng& rng,
                                const Primitives& prims) {
    check_content(params, content);
    Bytes key(params.kappa_bytes());
    for (auto& b : key) b = static_cast<std::uint8_t>(rng() >> 56);
    Key k1(std::move(key));
    std::uint64_t j_star = 1 + uniform_below(rng, params.L);
    BitString s = true_string(content, index_set(params, k1, j_star, prims));
    GeneratedPuzzle g;
    g.puzzle.hint = prims.hash_h(k1, j_star, s, params);
    g.puzzle.k1 = std::move(k1);
    g.puzzle.params = params;
    g.secret.j_star = j_star;
    g.secret.answer = prims.hash_a(s, params);
    return g;
}

SolveResult solve(const Puzzle& puzzle, const Content& content, const SolverOrder& order, const Primitives& prims) {
    check_content(puzzle.params, content);
    const auto& params = puzzle.params;
    if (!order.is_sequential() && order.size() != params.L) throw DomainError("solver order length must equal L");
    for (std::uint64_t step = 0; step < params.L; ++step) {
        std::uint64_t j = order.at(step);
        BitString s = true_string(content, index_set(params, puzzle.k1, j, prims));
        if (prims.hash_h(puzzle.k1, j, s, params) == puzzle.hint)
            return SolveResult{Solution{prims.hash_a(s, params)}, step + 1, j};
    }
    throw MalformedPuzzleError("no index set of the puzzle matches its hint");
}

bool verify(const PuzzleSecret& secret, const Solution& submitted) { return secret.answer == submitted.answer; }

}  // namespace bwpuzzle
