#include "bwpuzzle/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <sstream>

#include "bwpuzzle/bench.hpp"
#include "bwpuzzle/bounds.hpp"
#include "bwpuzzle/errors.hpp"
#include "bwpuzzle/net.hpp"
#include "bwpuzzle/protocol.hpp"
#include "bwpuzzle/puzzle.hpp"
#include "bwpuzzle/sweep.hpp"

namespace bwpuzzle {

namespace {

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const Bytes& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed for " + path);
}

template <class T>
std::vector<T> read_records(const std::string& path) {
    const auto data = read_file(path);
    ByteReader in(data);
    std::vector<T> out;
    try {
        while (!in.done()) out.push_back(T::read(in));
    } catch (const ProtocolError& e) {
        throw DomainError(path + ": " + e.what());
    }
    return out;
}

struct Globals {
    std::uint64_t seed = 1;
    std::string params;
    std::string csv;
};

PuzzleParams need_params(const Globals& g) {
    if (g.params.empty()) throw ConfigError("--params N,n,L,m,theta,kappa is required");
    return PuzzleParams::parse(g.params);
}

struct BoundFlags {
    double N = 1e7, n = 1e4, L = 200, m = 10, q_H = 4000, V = 60, delta = 0.1, sigma = 1, epsilon = 1;
    std::vector<double> A{1};

    void attach(CLI::App* cmd) {
        cmd->add_option("--N", N, "content bits");
        cmd->add_option("--n", n, "indices per set");
        cmd->add_option("--L", L, "sets per puzzle");
        cmd->add_option("--m", m, "puzzles per adversary");
        cmd->add_option("--qH", q_H, "hash budget per adversary");
        cmd->add_option("--V", V, "slack bits");
        cmd->add_option("--delta", delta, "deviation fraction");
        cmd->add_option("--sigma", sigma, "target advantage");
        cmd->add_option("--epsilon", epsilon, "oracle advantage");
        cmd->add_option("--A", A, "adversary counts")->delimiter(',');
    }

    bounds::BoundInputs inputs(double a) const {
        bounds::BoundInputs in;
        in.N = N;
        in.n = n;
        in.L = L;
        in.m = m;
        in.q_H = q_H;
        in.V = V;
        in.delta = delta;
        in.sigma = sigma;
        in.epsilon = epsilon;
        in.A = a;
        return in;
    }
};

void apply_params(BoundFlags& f, const Globals& g, CLI::App* cmd) {
    if (g.params.empty()) return;
    const auto p = PuzzleParams::parse(g.params);
    if (cmd->count("--N") == 0) f.N = static_cast<double>(p.N);
    if (cmd->count("--n") == 0) f.n = static_cast<double>(p.n);
    if (cmd->count("--L") == 0) f.L = static_cast<double>(p.L);
    if (cmd->count("--m") == 0) f.m = static_cast<double>(p.m);
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

void print_report(std::ostream& out, const bounds::ConditionReport& r) {
    for (const auto* group : {&r.conditions, &r.ranges})
        for (const auto& c : *group)
            out << "  " << std::left << std::setw(22) << c.name << (c.pass ? "PASS  " : "FAIL  ") << c.detail << '\n';
}

int cmd_bounds(std::ostream& out, const BoundFlags& f, const Globals& g) {
    std::ofstream csv;
    if (!g.csv.empty()) {
        csv.open(g.csv, std::ios::trunc);
        if (!csv) throw IoError("cannot write " + g.csv);
        csv << "# bwpuzzle bounds v1\n";
        csv << "A,P,dominant,penalties,raw,total,simple_cost,single_total\n";
    }
    for (double a : f.A) {
        const auto in = f.inputs(a);
        const auto multi = bounds::multi_bound(in);
        const auto single = bounds::single_bound(in);
        const double P = in.puzzles();
        const double simple = bounds::simple_strategy_cost(in.sigma, in.N, P, in.L, in.q_H);
        out << "A = " << num(a) << "  P = " << num(P) << '\n';
        out << "  multi dominant        " << num(multi.dominant_term) << '\n';
        for (const auto& t : multi.penalty_terms)
            out << "  penalty " << std::left << std::setw(14) << t.name << num(t.value) << '\n';
        out << "  multi raw             " << num(multi.raw) << '\n';
        out << "  multi total           " << num(multi.total) << '\n';
        out << "  single total          " << num(single.total) << "  (raw " << num(single.raw) << ")\n";
        out << "  simple strategy cost  " << num(simple) << '\n';
        if (simple > 0) out << "  total / simple        " << num(multi.total / simple) << '\n';
        out << "  conditions:\n";
        print_report(out, bounds::check_parameters(in));
        if (csv)
            csv << num(a) << ',' << num(P) << ',' << num(multi.dominant_term) << ',' << num(multi.penalty_sum()) << ','
                << num(multi.raw) << ',' << num(multi.total) << ',' << num(simple) << ',' << num(single.total) << '\n';
    }
    return kExitOk;
}

int cmd_check(std::ostream& out, const BoundFlags& f) {
    bool all = true;
    for (double a : f.A) {
        const auto r = bounds::check_parameters(f.inputs(a));
        out << "A = " << num(a) << (r.all_pass() ? "  all PASS\n" : "  FAIL\n");
        print_report(out, r);
        all = all && r.all_pass();
    }
    return all ? kExitOk : kExitRejected;
}

void print_verdict(std::ostream& out, const Verdict& v) {
    std::size_t passed = 0;
    for (bool b : v.pass) passed += b;
    out << "verdict id=" << std::hex << std::setw(16) << std::setfill('0') << v.id << std::dec << std::setfill(' ')
        << " on_time=" << (v.on_time ? "true" : "false") << " passed=" << passed << '/' << v.pass.size()
        << " accepted=" << (v.accepted ? "true" : "false") << std::endl;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bandwidth puzzle toolkit", "bwpuzzle"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "seed for deterministic subcommands");
    app.add_option("--params", g.params, "N,n,L,m,theta_ms,kappa");
    app.add_option("--csv", g.csv, "CSV output path");

    std::string content_path, out_path, secret_path, puzzles_path, answers_path, listen, connect, challenge;
    std::uint64_t N = 0, rounds = 0;
    std::int64_t grace_ms = -1, delay_ms = 0;
    double duration = 1.0, warmup = 1.0;

    auto* make = app.add_subcommand("make-content", "write N random bits");
    make->add_option("--N", N, "content bits")->required();
    make->add_option("--out", out_path, "output file")->required();

    auto* gen = app.add_subcommand("gen", "generate m puzzles for a content file");
    gen->add_option("--content", content_path)->required();
    gen->add_option("--out", out_path, "puzzle file")->required();
    gen->add_option("--secret", secret_path, "verifier secret file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "solve puzzles with the content");
    solve_cmd->add_option("--content", content_path)->required();
    solve_cmd->add_option("--puzzles", puzzles_path)->required();
    solve_cmd->add_option("--out", out_path, "answer file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check answers against the secret");
    verify_cmd->add_option("--secret", secret_path)->required();
    verify_cmd->add_option("--answers", answers_path)->required();

    auto* vd = app.add_subcommand("verifier-daemon", "issue challenges over TCP");
    vd->add_option("--content", content_path)->required();
    vd->add_option("--listen", listen, "host:port to accept provers on");
    vd->add_option("--challenge", challenge, "comma-separated listening provers to challenge once");
    vd->add_option("--rounds", rounds, "stop after this many exchanges (0: run forever)");
    vd->add_option("--grace-ms", grace_ms, "grace period (default 10% of theta)");

    auto* pd = app.add_subcommand("prover-daemon", "answer challenges over TCP");
    pd->add_option("--content", content_path, "content file; omit to answer without content");
    pd->add_option("--listen", listen, "host:port to accept a verifier on");
    pd->add_option("--connect", connect, "verifier host:port to connect to");
    pd->add_option("--rounds", rounds, "stop after this many exchanges (0: run forever)");
    pd->add_option("--delay-ms", delay_ms, "artificial delay before responding");

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run an adversary sweep from a key=value config");
    sim->add_option("config", config_path)->required();

    BoundFlags bflags, cflags;
    auto* bnd = app.add_subcommand("bounds", "evaluate the lower bounds");
    bflags.attach(bnd);
    auto* chk = app.add_subcommand("check-params", "evaluate the parameter conditions");
    cflags.attach(chk);

    auto* bench = app.add_subcommand("bench", "measure hash and index-generation rates");
    bench->add_option("--duration", duration, "seconds per primitive (>= 1)");
    bench->add_option("--warmup", warmup, "untimed warmup seconds");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*make) {
            Rng rng(g.seed);
            Content::random(N, rng).save(out_path);
            out << "wrote " << N << " bits to " << out_path << '\n';
            return kExitOk;
        }
        if (*gen) {
            const auto params = need_params(g);
            const auto content = Content::load(content_path, params.N);
            Rng rng(g.seed);
            Bytes puzzles, secrets;
            for (std::uint64_t i = 0; i < params.m; ++i) {
                auto gp = generate_puzzle(params, content, rng);
                gp.puzzle.serialize_into(puzzles);
                const auto s = gp.secret.serialize();
                secrets.insert(secrets.end(), s.begin(), s.end());
            }
            write_file(out_path, puzzles);
            write_file(secret_path, secrets);
            out << "wrote " << params.m << " puzzles to " << out_path << " and secrets to " << secret_path << '\n';
            return kExitOk;
        }
        if (*solve_cmd) {
            const auto puzzles = read_records<Puzzle>(puzzles_path);
            if (puzzles.empty()) throw DomainError("no puzzles in " + puzzles_path);
            const auto content = Content::load(content_path, puzzles.front().params.N);
            Bytes answers;
            std::uint64_t queries = 0;
            for (const auto& p : puzzles) {
                const auto r = solve(p, content);
                queries += r.hash_queries;
                const auto s = r.solution.serialize();
                answers.insert(answers.end(), s.begin(), s.end());
            }
            write_file(out_path, answers);
            out << "solved " << puzzles.size() << " puzzles with " << queries << " hash queries\n";
            return kExitOk;
        }
        if (*verify_cmd) {
            const auto secrets = read_records<PuzzleSecret>(secret_path);
            const auto answers = read_records<Solution>(answers_path);
            std::size_t passed = 0;
            for (std::size_t i = 0; i < secrets.size() && i < answers.size(); ++i)
                passed += verify(secrets[i], answers[i]);
            const bool ok = secrets.size() == answers.size() && passed == secrets.size();
            out << (ok ? "accepted" : "rejected") << " (" << passed << '/' << secrets.size() << " correct)\n";
            return ok ? kExitOk : kExitRejected;
        }
        if (*vd) {
            const auto params = need_params(g);
            const auto content = Content::load(content_path, params.N);
            std::optional<std::chrono::milliseconds> grace;
            if (grace_ms >= 0) grace = std::chrono::milliseconds(grace_ms);
            VerifierState state(content, g.seed, grace);
            if (!challenge.empty()) {
                std::vector<net::Endpoint> eps;
                std::stringstream ss(challenge);
                for (std::string item; std::getline(ss, item, ',');) eps.push_back(net::Endpoint::parse(item));
                bool all = true;
                for (const auto& v : net::challenge_provers(state, params, eps)) {
                    print_verdict(out, v);
                    all = all && v.accepted;
                }
                return all ? kExitOk : kExitRejected;
            }
            if (listen.empty()) throw ConfigError("verifier-daemon needs --listen or --challenge");
            auto server = net::start_verifier(state, params, net::Endpoint::parse(listen),
                                              [&out](const Verdict& v) { print_verdict(out, v); });
            out << "listening on port " << server->port() << std::endl;
            server->wait_for(rounds == 0 ? SIZE_MAX : rounds);
            return kExitOk;
        }
        if (*pd) {
            std::optional<Content> content;
            if (!content_path.empty()) {
                if (g.params.empty()) throw ConfigError("--params is required with --content");
                content = Content::load(content_path, need_params(g).N);
            }
            net::ProverBehavior behavior;
            behavior.content = content ? &*content : nullptr;
            behavior.delay = std::chrono::milliseconds(delay_ms);
            behavior.seed = g.seed;
            if (!connect.empty()) {
                const auto ep = net::Endpoint::parse(connect);
                const std::uint64_t n = rounds == 0 ? 1 : rounds;
                bool all = true;
                for (std::uint64_t i = 0; i < n; ++i) {
                    auto conn = net::Connection::connect(ep);
                    auto v = net::run_prover_exchange(conn, behavior);
                    print_verdict(out, v);
                    all = all && v.accepted;
                }
                return all ? kExitOk : kExitRejected;
            }
            if (listen.empty()) throw ConfigError("prover-daemon needs --listen or --connect");
            auto server = net::start_prover(behavior, net::Endpoint::parse(listen),
                                            [&out](const Verdict& v) { print_verdict(out, v); });
            out << "listening on port " << server->port() << std::endl;
            server->wait_for(rounds == 0 ? SIZE_MAX : rounds);
            return kExitOk;
        }
        if (*sim) {
            auto kv = KeyValueConfig::load(config_path);
            if (!kv.has("seed") && app.count("--seed")) kv.set("seed", std::to_string(g.seed));
            const auto cfg = SimulationConfig::from(kv);
            const auto rows = run_sweep(cfg);
            if (!g.csv.empty()) {
                std::ofstream csv(g.csv, std::ios::trunc);
                if (!csv) throw IoError("cannot write " + g.csv);
                write_sweep_csv(csv, rows);
                write_sweep_summary(out, cfg, rows);
            } else {
                write_sweep_csv(out, rows);
            }
            return kExitOk;
        }
        if (*bnd) {
            apply_params(bflags, g, bnd);
            return cmd_bounds(out, bflags, g);
        }
        if (*chk) {
            apply_params(cflags, g, chk);
            return cmd_check(out, cflags);
        }
        if (*bench) {
            BenchOptions opt;
            if (!g.params.empty()) opt.params = PuzzleParams::parse(g.params);
            opt.duration_s = duration;
            opt.warmup_s = warmup;
            const auto report = run_bench(opt);
            print_bench(out, report, evaluate_feasibility(report));
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const MalformedPuzzleError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const TransportError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNetwork;
    } catch (const ProtocolError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNetwork;
    }
    return kExitUsage;
}

}  // namespace bwpuzzle
