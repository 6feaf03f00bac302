#include "bwpuzzle/crypto.hpp"

#include <openssl/evp.h>

#include <array>
#include <limits>
#include <memory>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

namespace {

struct MdDeleter {
    void operator()(EVP_MD* md) const { EVP_MD_free(md); }
};
struct CtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

const EVP_MD* sha256_md() {
    static const std::unique_ptr<EVP_MD, MdDeleter> md(EVP_MD_fetch(nullptr, "SHA256", nullptr));
    if (!md) throw std::runtime_error("OpenSSL SHA256 unavailable");
    return md.get();
}

// One context per thread; EVP_DigestInit_ex2 resets it for every message.
EVP_MD_CTX* thread_ctx() {
    thread_local std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
    return ctx.get();
}

void sha256_into(ByteView a, ByteView b, std::uint8_t* out) {
    EVP_MD_CTX* ctx = thread_ctx();
    unsigned int len = 0;
    if (EVP_DigestInit_ex2(ctx, sha256_md(), nullptr) != 1 || EVP_DigestUpdate(ctx, a.data(), a.size()) != 1 ||
        (!b.empty() && EVP_DigestUpdate(ctx, b.data(), b.size()) != 1) || EVP_DigestFinal_ex(ctx, out, &len) != 1)
        throw std::runtime_error("SHA-256 computation failed");
}

class Sha256Expand final : public HashFunction {
public:
    void digest(ByteView message, std::span<std::uint8_t> out) const override {
        std::array<std::uint8_t, 32> block{};
        std::size_t written = 0;
        for (std::uint32_t b = 0; written < out.size(); ++b) {
            if (b == 0) {
                sha256_into(message, {}, block.data());
            } else {
                Bytes ctr;
                put_be32(ctr, b);
                sha256_into(message, ctr, block.data());
            }
            auto take = std::min(block.size(), out.size() - written);
            std::copy_n(block.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(written));
            written += take;
        }
    }
    std::string name() const override { return "sha256"; }
};

void check_key(const Key& k, const PuzzleParams& params, const char* what) {
    if (k.size() != params.kappa_bytes())
        throw DomainError(std::string(what) + " length " + std::to_string(k.size()) + " does not match kappa/8 = " +
                          std::to_string(params.kappa_bytes()));
}

void check_string(const BitString& s, const PuzzleParams& params) {
    if (s.size() != params.n)
        throw DomainError("string has " + std::to_string(s.size()) + " bits, expected n = " + std::to_string(params.n));
}

void bump(std::atomic<std::uint64_t>* c) {
    if (c) c->fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

const HashFunction& sha256_backend() {
    static const Sha256Expand instance;
    return instance;
}

const Primitives& Primitives::standard() {
    static const Primitives instance;
    return instance;
}

Key Primitives::f1(const Key& k1, std::uint64_t j, const PuzzleParams& params) const {
    check_key(k1, params, "k1");
    if (j < 1 || j > params.L)
        throw DomainError("set ordinal " + std::to_string(j) + " out of range [1, " + std::to_string(params.L) + "]");
    bump(counters_ ? &counters_->f1 : nullptr);
    Bytes msg(k1.bytes());
    msg.push_back(kTagF1);
    put_be32(msg, static_cast<std::uint32_t>(j));
    Bytes out(params.kappa_bytes());
    hash_->digest(msg, out);
    return Key(std::move(out));
}

std::uint64_t Primitives::f2(const Key& k2, std::uint64_t i, const PuzzleParams& params) const {
    check_key(k2, params, "k2");
    if (i < 1 || i > params.n)
        throw DomainError("position " + std::to_string(i) + " out of range [1, " + std::to_string(params.n) + "]");
    if (params.N < 1) throw DomainError("N must be at least 1");
    bump(counters_ ? &counters_->f2 : nullptr);
    // Accept x < floor(2^64 / N) * N; x mod N is then exactly uniform.
    const std::uint64_t N = params.N;
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % N + 1) % N;  // 2^64 mod N
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;       // largest accepted
    Bytes msg(k2.bytes());
    msg.push_back(kTagF2);
    put_be32(msg, static_cast<std::uint32_t>(i));
    const std::size_t ctr_at = msg.size();
    put_be32(msg, 0);
    std::array<std::uint8_t, 32> block{};
    for (std::uint32_t ctr = 0;; ++ctr) {
        for (int s = 0; s < 4; ++s) msg[ctr_at + s] = static_cast<std::uint8_t>(ctr >> (24 - 8 * s));
        hash_->digest(msg, block);
        for (std::size_t w = 0; w < 4; ++w) {
            std::uint64_t x = get_be64(block, 8 * w);
            if (x <= limit) return x % N;
        }
    }
}

Digest Primitives::hash_h(const Key& k1, std::uint64_t j, const BitString& s, const PuzzleParams& params) const {
    check_key(k1, params, "k1");
    check_string(s, params);
    if (j < 1 || j > params.L)
        throw DomainError("set ordinal " + std::to_string(j) + " out of range [1, " + std::to_string(params.L) + "]");
    bump(counters_ ? &counters_->h : nullptr);
    Bytes msg;
    msg.reserve(1 + k1.size() + 8 + s.packed().size());
    msg.push_back(kTagH);
    msg.insert(msg.end(), k1.bytes().begin(), k1.bytes().end());
    put_be32(msg, static_cast<std::uint32_t>(j));
    put_be32(msg, static_cast<std::uint32_t>(params.n));
    msg.insert(msg.end(), s.packed().begin(), s.packed().end());
    Bytes out(params.kappa_bytes());
    hash_->digest(msg, out);
    return Digest(std::move(out));
}

Digest Primitives::hash_a(const BitString& s, const PuzzleParams& params) const {
    validate_kappa(params.kappa);
    check_string(s, params);
    bump(counters_ ? &counters_->a : nullptr);
    Bytes msg;
    msg.reserve(5 + s.packed().size());
    msg.push_back(kTagA);
    put_be32(msg, static_cast<std::uint32_t>(params.n));
    msg.insert(msg.end(), s.packed().begin(), s.packed().end());
    Bytes out(params.kappa_bytes());
    hash_->digest(msg, out);
    return Digest(std::move(out));
}

Key prf_f1(const Key& k1, std::uint64_t j, const PuzzleParams& params) {
    return Primitives::standard().f1(k1, j, params);
}
std::uint64_t prf_f2(const Key& k2, std::uint64_t i, const PuzzleParams& params) {
    return Primitives::standard().f2(k2, i, params);
}
Digest hash_H(const Key& k1, std::uint64_t j, const BitString& s, const PuzzleParams& params) {
    return Primitives::standard().hash_h(k1, j, s, params);
}
Digest hash_A(const BitString& s, const PuzzleParams& params) { return Primitives::standard().hash_a(s, params); }

}  // namespace bwpuzzle
