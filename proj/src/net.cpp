#include "bwpuzzle/net.hpp"

#include <boost/asio.hpp>
#include <condition_variable>
#include <mutex>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle::net {

namespace asio = boost::asio;
using asio::ip::tcp;

Endpoint Endpoint::parse(const std::string& text) {
    const auto colon = text.rfind(':');
    Endpoint ep;
    std::string port = text;
    if (colon != std::string::npos) {
        if (colon > 0) ep.host = text.substr(0, colon);
        port = text.substr(colon + 1);
    }
    try {
        std::size_t used = 0;
        const auto value = std::stoul(port, &used);
        if (used != port.size() || value > 65535) throw std::out_of_range("port");
        ep.port = static_cast<std::uint16_t>(value);
    } catch (const std::exception&) {
        throw ConfigError("bad endpoint: " + text);
    }
    return ep;
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

Response prover_answer(const Challenge& challenge, const ProverBehavior& behavior, Rng& rng) {
    auto r = behavior.content ? respond(challenge, *behavior.content) : respond_without_content(challenge, rng);
    if (behavior.delay.count() > 0) std::this_thread::sleep_for(behavior.delay);
    return r;
}

struct Connection::Impl {
    asio::io_context io;
    tcp::socket socket{io};
};

Connection::Connection(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Connection::~Connection() = default;
Connection::Connection(Connection&&) noexcept = default;
Connection& Connection::operator=(Connection&&) noexcept = default;

Connection Connection::connect(const Endpoint& ep, std::chrono::milliseconds timeout) {
    auto impl = std::make_unique<Impl>();
    const auto deadline = Clock::now() + timeout;
    boost::system::error_code ec;
    tcp::resolver resolver(impl->io);
    auto results = resolver.resolve(ep.host, std::to_string(ep.port), ec);
    if (ec) throw TransportError("resolve " + ep.to_string() + ": " + ec.message());
    for (;;) {
        asio::connect(impl->socket, results, ec);
        if (!ec) break;
        if (Clock::now() >= deadline) throw TransportError("connect " + ep.to_string() + ": " + ec.message());
        impl->socket = tcp::socket(impl->io);
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    impl->socket.set_option(tcp::no_delay(true));
    return Connection(std::move(impl));
}

void Connection::send(const Bytes& frame) {
    boost::system::error_code ec;
    asio::write(impl_->socket, asio::buffer(frame), ec);
    if (ec) throw TransportError("send: " + ec.message());
}

Frame Connection::receive() {
    boost::system::error_code ec;
    Bytes buf(4);
    asio::read(impl_->socket, asio::buffer(buf), ec);
    if (ec) throw TransportError("receive: " + ec.message());
    const auto len = frame_body_length(buf);
    buf.resize(4 + static_cast<std::size_t>(len));
    asio::read(impl_->socket, asio::buffer(buf.data() + 4, len), ec);
    if (ec) throw TransportError("receive: " + ec.message());
    return decode_frame(buf);
}

struct Server::Impl {
    asio::io_context io;
    tcp::acceptor acceptor{io};
    std::thread loop;
    std::mutex mu;
    mutable std::condition_variable cv;
    std::vector<std::thread> workers;
    Handler handler;
    bool stopped = false;
};

Server::Server(const Endpoint& listen, Handler handler) : impl_(std::make_unique<Impl>()) {
    impl_->handler = std::move(handler);
    boost::system::error_code ec;
    tcp::endpoint ep(asio::ip::make_address(listen.host, ec), listen.port);
    if (ec) throw ConfigError("bad listen address: " + listen.host);
    impl_->acceptor.open(ep.protocol());
    impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
    impl_->acceptor.bind(ep, ec);
    if (ec) throw TransportError("bind " + listen.to_string() + ": " + ec.message());
    impl_->acceptor.listen();
    accept_next();
    impl_->loop = std::thread([this] { impl_->io.run(); });
}

void Server::accept_next() {
    impl_->acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
        if (ec) return;
        const auto protocol = socket.local_endpoint().protocol();
        const auto native = socket.release();
        {
            std::lock_guard lock(impl_->mu);
            impl_->workers.emplace_back([this, protocol, native] {
                auto conn_impl = std::make_unique<Connection::Impl>();
                conn_impl->socket.assign(protocol, native);
                conn_impl->socket.set_option(tcp::no_delay(true));
                Connection conn(std::move(conn_impl));
                try {
                    impl_->handler(conn);
                } catch (const std::exception&) {
                }
                {
                    std::lock_guard lock(impl_->mu);
                    handled_++;
                }
                impl_->cv.notify_all();
            });
        }
        accept_next();
    });
}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::wait_for(std::size_t count) const {
    std::unique_lock lock(impl_->mu);
    impl_->cv.wait(lock, [&] { return handled_.load() >= count; });
}

void Server::stop() {
    if (!impl_ || impl_->stopped) return;
    impl_->stopped = true;
    asio::post(impl_->io, [this] {
        boost::system::error_code ec;
        impl_->acceptor.close(ec);
    });
    impl_->loop.join();
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(impl_->mu);
        workers.swap(impl_->workers);
    }
    for (auto& t : workers) t.join();
}

Verdict run_verifier_exchange(VerifierState& state, const PuzzleParams& params, Connection& conn) {
    auto challenge = state.issue(params);
    conn.send(challenge.frame());
    auto frame = conn.receive();
    const auto arrival = Clock::now();
    if (frame.type != MessageType::response) throw ProtocolError("expected RESPONSE");
    auto verdict = state.adjudicate(Response::decode(frame.payload), arrival);
    conn.send(verdict.frame());
    return verdict;
}

Verdict run_prover_exchange(Connection& conn, const ProverBehavior& behavior) {
    auto frame = conn.receive();
    if (frame.type != MessageType::challenge) throw ProtocolError("expected CHALLENGE");
    auto challenge = Challenge::decode(frame.payload);
    Rng rng(derive_seed(behavior.seed, challenge.id));
    conn.send(prover_answer(challenge, behavior, rng).frame());
    auto reply = conn.receive();
    if (reply.type != MessageType::verdict) throw ProtocolError("expected VERDICT");
    return Verdict::decode(reply.payload);
}

std::vector<Verdict> challenge_provers(VerifierState& state, const PuzzleParams& params,
                                       const std::vector<Endpoint>& provers) {
    std::vector<Connection> conns;
    for (const auto& ep : provers) conns.push_back(Connection::connect(ep));
    auto round = state.issue_round(params, provers.size());
    for (std::size_t i = 0; i < conns.size(); ++i) conns[i].send(round[i].frame());
    std::vector<Verdict> verdicts(conns.size());
    std::vector<std::exception_ptr> errors(conns.size());
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < conns.size(); ++i) {
        threads.emplace_back([&, i] {
            try {
                auto frame = conns[i].receive();
                const auto arrival = Clock::now();
                if (frame.type != MessageType::response) throw ProtocolError("expected RESPONSE");
                verdicts[i] = state.adjudicate(Response::decode(frame.payload), arrival);
                conns[i].send(verdicts[i].frame());
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return verdicts;
}

std::unique_ptr<Server> start_verifier(VerifierState& state, const PuzzleParams& params, const Endpoint& listen,
                                       std::function<void(const Verdict&)> on_verdict) {
    return std::make_unique<Server>(listen, [&state, params, on_verdict](Connection& conn) {
        auto v = run_verifier_exchange(state, params, conn);
        if (on_verdict) on_verdict(v);
    });
}

std::unique_ptr<Server> start_prover(const ProverBehavior& behavior, const Endpoint& listen,
                                     std::function<void(const Verdict&)> on_verdict) {
    return std::make_unique<Server>(listen, [behavior, on_verdict](Connection& conn) {
        auto v = run_prover_exchange(conn, behavior);
        if (on_verdict) on_verdict(v);
    });
}

}  // namespace bwpuzzle::net
