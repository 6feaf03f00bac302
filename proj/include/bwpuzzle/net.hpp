#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "bwpuzzle/protocol.hpp"

namespace bwpuzzle::net {

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;

    /// "host:port" or ":port"
    static Endpoint parse(const std::string& text);
    std::string to_string() const;
};

/// How a prover answers a challenge.
struct ProverBehavior {
    const Content* content = nullptr;  ///< nullptr: answer with random digests
    std::chrono::milliseconds delay{0};
    std::uint64_t seed = 0;
};

Response prover_answer(const Challenge& challenge, const ProverBehavior& behavior, Rng& rng);

/// One connected peer speaking length-prefixed frames.
class Connection {
public:
    ~Connection();
    Connection(Connection&&) noexcept;
    Connection& operator=(Connection&&) noexcept;

    static Connection connect(const Endpoint& ep, std::chrono::milliseconds timeout = std::chrono::seconds(10));

    void send(const Bytes& frame);
    Frame receive();

private:
    struct Impl;
    explicit Connection(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
    friend class Server;
};

/// Accept loop on a background thread; each connection runs `handler` on
/// its own thread.
class Server {
public:
    using Handler = std::function<void(Connection&)>;

    Server(const Endpoint& listen, Handler handler);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    std::uint16_t port() const;
    std::size_t handled() const { return handled_.load(); }
    /// Blocks until `count` connections have finished.
    void wait_for(std::size_t count) const;
    void stop();

private:
    void accept_next();
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::atomic<std::size_t> handled_{0};
};

/// Verifier side of one exchange on an open connection: issue, send,
/// await the response, adjudicate at arrival, send the verdict.
Verdict run_verifier_exchange(VerifierState& state, const PuzzleParams& params, Connection& conn);

/// Prover side: receive a challenge, answer, receive the verdict.
Verdict run_prover_exchange(Connection& conn, const ProverBehavior& behavior);

/// Connects to each listening prover, then issues one round stamped with a
/// single time and collects the verdicts.
std::vector<Verdict> challenge_provers(VerifierState& state, const PuzzleParams& params,
                                       const std::vector<Endpoint>& provers);

/// Server that challenges any prover that connects.
std::unique_ptr<Server> start_verifier(VerifierState& state, const PuzzleParams& params, const Endpoint& listen,
                                       std::function<void(const Verdict&)> on_verdict = {});

/// Server that answers challenges from a connecting verifier.
std::unique_ptr<Server> start_prover(const ProverBehavior& behavior, const Endpoint& listen,
                                     std::function<void(const Verdict&)> on_verdict = {});

}  // namespace bwpuzzle::net
