#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "bwpuzzle/puzzle.hpp"

namespace bwpuzzle {

using Clock = std::chrono::steady_clock;

enum class MessageType : std::uint8_t { challenge = 0x01, response = 0x02, verdict = 0x03 };

inline constexpr std::size_t kFrameHeader = 5;              ///< be32 length || type
inline constexpr std::uint32_t kMaxFrameLength = 64u << 20;  ///< length field cap

struct Frame {
    MessageType type = MessageType::challenge;
    Bytes payload;
};

/// be32(1 + |payload|) || type || payload
Bytes encode_frame(MessageType type, ByteView payload);
/// Decodes exactly one whole frame.
Frame decode_frame(ByteView data);
/// Parses a header; returns the number of bytes still to read for the body.
std::uint32_t frame_body_length(ByteView header);

struct Challenge {
    std::uint64_t id = 0;
    PuzzleParams params;
    std::vector<Puzzle> puzzles;  // exactly params.m, all sharing params
    Clock::time_point issued_at{};  // verifier-local, not on the wire

    /// id || params || m x (k1 || hint)
    Bytes payload() const;
    Bytes frame() const { return encode_frame(MessageType::challenge, payload()); }
    static Challenge decode(ByteView payload);
    std::size_t frame_size() const;
};

struct Response {
    std::uint64_t id = 0;
    std::vector<Digest> answers;

    /// id || be32 count || be16 digest bytes || digests
    Bytes payload() const;
    Bytes frame() const { return encode_frame(MessageType::response, payload()); }
    static Response decode(ByteView payload);
};

struct Verdict {
    std::uint64_t id = 0;
    std::vector<bool> pass;
    bool on_time = false;
    bool accepted = false;

    /// id || flags (bit0 on_time, bit1 accepted) || be32 m || one byte per flag
    Bytes payload() const;
    Bytes frame() const { return encode_frame(MessageType::verdict, payload()); }
    static Verdict decode(ByteView payload);
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Verifier bookkeeping: secrets per outstanding challenge and the first
/// verdict reached for each. Thread-safe.
class VerifierState {
public:
    /// `grace` defaults to 10% of theta.
    VerifierState(const Content& content, std::uint64_t seed, std::optional<std::chrono::milliseconds> grace = {});

    Challenge issue(const PuzzleParams& params, Clock::time_point now = Clock::now());
    /// One challenge per prover, all stamped with the same issue time.
    std::vector<Challenge> issue_round(const PuzzleParams& params, std::size_t provers,
                                       Clock::time_point now = Clock::now());

    /// on_time iff arrival - issued_at <= theta + grace. Repeated responses
    /// for an id return the first verdict unchanged.
    Verdict adjudicate(const Response& response, Clock::time_point arrival);

    std::optional<Verdict> verdict(std::uint64_t id) const;
    std::chrono::milliseconds grace(const PuzzleParams& params) const;
    const Content& content() const { return content_; }

private:
    struct Pending {
        PuzzleParams params;
        std::vector<PuzzleSecret> secrets;
        Clock::time_point issued_at;
        std::optional<Verdict> verdict;
    };
    Challenge issue_locked(const PuzzleParams& params, Clock::time_point now);

    const Content& content_;
    std::optional<std::chrono::milliseconds> grace_;
    mutable std::mutex mu_;
    Rng rng_;
    std::map<std::uint64_t, Pending> pending_;
};

/// Honest answer: solves each puzzle against `content`. Unsolvable
/// positions carry an all-zero digest.
Response respond(const Challenge& challenge, const Content& content, const Primitives& prims = Primitives::standard());

/// A prover without the content: random digests.
Response respond_without_content(const Challenge& challenge, Rng& rng);

}  // namespace bwpuzzle
