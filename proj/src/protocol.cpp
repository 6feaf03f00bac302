#include "bwpuzzle/protocol.hpp"

#include <stdexcept>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

Bytes encode_frame(MessageType type, ByteView payload) {
    if (payload.size() + 1 > kMaxFrameLength) throw ProtocolError("frame too large");
    Bytes out;
    out.reserve(kFrameHeader + payload.size());
    put_be32(out, static_cast<std::uint32_t>(payload.size() + 1));
    out.push_back(static_cast<std::uint8_t>(type));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::uint32_t frame_body_length(ByteView header) {
    if (header.size() < 4) throw ProtocolError("truncated frame header");
    const auto len = get_be32(header, 0);
    if (len == 0) throw ProtocolError("empty frame");
    if (len > kMaxFrameLength) throw ProtocolError("frame too large");
    return len;
}

Frame decode_frame(ByteView data) {
    const auto len = frame_body_length(data);
    if (data.size() != 4 + static_cast<std::size_t>(len)) throw ProtocolError("frame length mismatch");
    const auto type = data[4];
    if (type < 0x01 || type > 0x03) throw ProtocolError("unknown message type");
    return Frame{static_cast<MessageType>(type), Bytes(data.begin() + 5, data.end())};
}

Bytes Challenge::payload() const {
    if (puzzles.size() != params.m) throw ProtocolError("challenge must carry exactly m puzzles");
    Bytes out;
    put_be64(out, id);
    params.encode(out);
    for (const auto& p : puzzles) {
        if (!(p.params == params)) throw ProtocolError("challenge puzzles must share params");
        out.insert(out.end(), p.k1.bytes().begin(), p.k1.bytes().end());
        out.insert(out.end(), p.hint.bytes().begin(), p.hint.bytes().end());
    }
    return out;
}

std::size_t Challenge::frame_size() const {
    return kFrameHeader + 8 + PuzzleParams::kEncodedSize + params.m * 2 * params.kappa_bytes();
}

Challenge Challenge::decode(ByteView payload) {
    ByteReader in(payload);
    Challenge c;
    c.id = in.u64();
    c.params = PuzzleParams::decode(in);
    const auto kb = c.params.kappa_bytes();
    if (in.remaining() != c.params.m * 2 * kb) throw ProtocolError("challenge size does not match m");
    c.puzzles.reserve(c.params.m);
    for (std::uint64_t i = 0; i < c.params.m; ++i) {
        Puzzle p;
        p.params = c.params;
        auto k1 = in.take(kb);
        p.k1 = Key(Bytes(k1.begin(), k1.end()));
        auto hint = in.take(kb);
        p.hint = Digest(Bytes(hint.begin(), hint.end()));
        c.puzzles.push_back(std::move(p));
    }
    return c;
}

Bytes Response::payload() const {
    Bytes out;
    put_be64(out, id);
    put_be32(out, static_cast<std::uint32_t>(answers.size()));
    const std::size_t len = answers.empty() ? 0 : answers.front().size();
    put_be16(out, static_cast<std::uint16_t>(len));
    for (const auto& d : answers) {
        if (d.size() != len) throw ProtocolError("answers must share one digest length");
        out.insert(out.end(), d.bytes().begin(), d.bytes().end());
    }
    return out;
}

Response Response::decode(ByteView payload) {
    ByteReader in(payload);
    Response r;
    r.id = in.u64();
    const auto count = in.u32();
    const auto len = in.u16();
    if (in.remaining() != static_cast<std::size_t>(count) * len) throw ProtocolError("response size mismatch");
    r.answers.reserve(count);
    try {
        for (std::uint32_t i = 0; i < count; ++i) {
            auto d = in.take(len);
            r.answers.emplace_back(Bytes(d.begin(), d.end()));
        }
    } catch (const DomainError& e) {
        throw ProtocolError(std::string("bad digest length: ") + e.what());
    }
    return r;
}

Bytes Verdict::payload() const {
    Bytes out;
    put_be64(out, id);
    out.push_back(static_cast<std::uint8_t>((on_time ? 1 : 0) | (accepted ? 2 : 0)));
    put_be32(out, static_cast<std::uint32_t>(pass.size()));
    for (bool b : pass) out.push_back(b ? 1 : 0);
    return out;
}

Verdict Verdict::decode(ByteView payload) {
    ByteReader in(payload);
    Verdict v;
    v.id = in.u64();
    const auto flags = in.u8();
    if (flags > 3) throw ProtocolError("bad verdict flags");
    v.on_time = flags & 1;
    v.accepted = flags & 2;
    const auto m = in.u32();
    if (in.remaining() != m) throw ProtocolError("verdict size mismatch");
    for (std::uint32_t i = 0; i < m; ++i) {
        const auto b = in.u8();
        if (b > 1) throw ProtocolError("bad pass flag");
        v.pass.push_back(b == 1);
    }
    return v;
}

VerifierState::VerifierState(const Content& content, std::uint64_t seed, std::optional<std::chrono::milliseconds> grace)
    : content_(content), grace_(grace), rng_(seed) {}

std::chrono::milliseconds VerifierState::grace(const PuzzleParams& params) const {
    if (grace_) return *grace_;
    return std::chrono::milliseconds(params.theta_ms / 10);
}

Challenge VerifierState::issue_locked(const PuzzleParams& params, Clock::time_point now) {
    params.validate();
    if (params.N != content_.size()) throw ConfigError("params N does not match verifier content");
    Challenge c;
    c.id = rng_();
    if (pending_.count(c.id)) throw std::logic_error("duplicate challenge id");
    c.params = params;
    c.issued_at = now;
    Pending p{params, {}, now, std::nullopt};
    for (std::uint64_t i = 0; i < params.m; ++i) {
        auto g = generate_puzzle(params, content_, rng_);
        c.puzzles.push_back(std::move(g.puzzle));
        p.secrets.push_back(std::move(g.secret));
    }
    pending_.emplace(c.id, std::move(p));
    return c;
}

Challenge VerifierState::issue(const PuzzleParams& params, Clock::time_point now) {
    std::lock_guard lock(mu_);
    return issue_locked(params, now);
}

std::vector<Challenge> VerifierState::issue_round(const PuzzleParams& params, std::size_t provers,
                                                  Clock::time_point now) {
    std::lock_guard lock(mu_);
    std::vector<Challenge> out;
    for (std::size_t i = 0; i < provers; ++i) out.push_back(issue_locked(params, now));
    return out;
}

Verdict VerifierState::adjudicate(const Response& response, Clock::time_point arrival) {
    std::lock_guard lock(mu_);
    auto it = pending_.find(response.id);
    if (it == pending_.end()) throw ProtocolError("unknown challenge id");
    auto& p = it->second;
    if (p.verdict) return *p.verdict;
    Verdict v;
    v.id = response.id;
    const auto limit = std::chrono::milliseconds(p.params.theta_ms) + grace(p.params);
    v.on_time = arrival - p.issued_at <= limit;
    bool all = response.answers.size() == p.secrets.size();
    for (std::size_t i = 0; i < p.secrets.size(); ++i) {
        bool ok = i < response.answers.size() && verify(p.secrets[i], Solution{response.answers[i]});
        v.pass.push_back(ok);
        all = all && ok;
    }
    v.accepted = v.on_time && all;
    p.verdict = v;
    return v;
}

std::optional<Verdict> VerifierState::verdict(std::uint64_t id) const {
    std::lock_guard lock(mu_);
    auto it = pending_.find(id);
    if (it == pending_.end()) return std::nullopt;
    return it->second.verdict;
}

Response respond(const Challenge& challenge, const Content& content, const Primitives& prims) {
    Response r;
    r.id = challenge.id;
    for (const auto& p : challenge.puzzles) {
        try {
            r.answers.push_back(solve(p, content, SolverOrder::sequential(), prims).solution.answer);
        } catch (const MalformedPuzzleError&) {
            r.answers.push_back(Digest::zero(p.params.kappa));
        } catch (const DomainError&) {
            r.answers.push_back(Digest::zero(p.params.kappa));
        }
    }
    return r;
}

Response respond_without_content(const Challenge& challenge, Rng& rng) {
    Response r;
    r.id = challenge.id;
    for (const auto& p : challenge.puzzles) {
        Bytes b(p.params.kappa_bytes());
        for (auto& x : b) x = static_cast<std::uint8_t>(rng() >> 56);
        r.answers.emplace_back(std::move(b));
    }
    return r;
}

}  // namespace bwpuzzle
