#include "bwpuzzle/bench.hpp"

#include <chrono>
#include <cstdio>

#include "bwpuzzle/crypto.hpp"
#include "bwpuzzle/errors.hpp"
#include "bwpuzzle/random.hpp"

namespace bwpuzzle {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double rate(F&& call, double seconds) {
    const auto start = Clock::now();
    const auto budget = std::chrono::duration<double>(seconds);
    std::uint64_t calls = 0;
    for (;;) {
        for (int k = 0; k < 64; ++k) call(calls++);
        const std::chrono::duration<double> elapsed = Clock::now() - start;
        if (elapsed >= budget) return static_cast<double>(calls) / elapsed.count();
    }
}

volatile std::uint64_t g_sink;

}  // namespace

BenchReport run_bench(const BenchOptions& options) {
    if (options.duration_s < 1.0) throw ConfigError("bench duration must be at least 1 s");
    options.params.validate();
    const auto& params = options.params;
    const auto& prims = Primitives::standard();
    Rng rng(1);
    Bytes kb(params.kappa_bytes());
    for (auto& b : kb) b = static_cast<std::uint8_t>(rng());
    const Key key(kb);
    BitString s(params.n);
    for (std::uint64_t i = 0; i < params.n; ++i) s.set(i, rng() & 1);

    auto hash_call = [&](std::uint64_t c) {
        g_sink = prims.hash_h(key, 1 + c % params.L, s, params).bytes()[0];
    };
    auto prf_call = [&](std::uint64_t c) { g_sink = prims.f2(key, 1 + c % params.n, params); };

    if (options.warmup_s > 0) {
        rate(hash_call, options.warmup_s / 2);
        rate(prf_call, options.warmup_s / 2);
    }
    BenchReport r;
    r.params = params;
    r.hash_calls_per_sec = rate(hash_call, options.duration_s);
    r.prf_calls_per_sec = rate(prf_call, options.duration_s);
    r.theta_s = static_cast<double>(params.theta_ms) / 1000.0;
    r.derived_q_H = r.hash_calls_per_sec * r.theta_s;
    return r;
}

Feasibility evaluate_feasibility(const BenchReport& report) {
    const double N = static_cast<double>(report.params.N);
    const double n = static_cast<double>(report.params.n);
    const double per_query = 1.0 / report.hash_calls_per_sec + n / report.prf_calls_per_sec;
    Feasibility f;
    f.hash_capacity = report.hash_calls_per_sec * report.theta_s;
    f.query_capacity = report.theta_s / per_query;
    f.required_queries = 2.0 * N / n;
    f.solve_time_s = f.required_queries * per_query;
    f.capped_by_1e6 = f.hash_capacity <= 1e6;
    f.enough_queries = f.hash_capacity >= f.required_queries;
    f.seconds_scale = f.solve_time_s >= 0.1 && f.solve_time_s <= 10.0;
    return f;
}

void print_bench(std::ostream& out, const BenchReport& r, const Feasibility& f) {
    char buf[256];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out << buf << '\n';
    };
    line("params               %s", r.params.to_string().c_str());
    line("hash_calls_per_sec   %.0f   (H on %llu-bit input)", r.hash_calls_per_sec,
         static_cast<unsigned long long>(r.params.n));
    line("prf_calls_per_sec    %.0f   (f2 index generation)", r.prf_calls_per_sec);
    line("theta_s              %.3f", r.theta_s);
    line("derived_q_H          %.0f", r.derived_q_H);
    line("query_capacity       %.0f   (H plus n index draws per query)", f.query_capacity);
    line("required_queries     %.0f   (n L m >= 2N)", f.required_queries);
    line("solve_time_s         %.4f", f.solve_time_s);
    line("verdict_1 %-5s  at most 1e6 hash calls fit within theta", f.capped_by_1e6 ? "true" : "false");
    line("verdict_2 %-5s  enough hash calls fit within theta for n L m >= 2N", f.enough_queries ? "true" : "false");
    line("verdict_3 %-5s  solving n L m = 2N takes seconds (0.1 s to 10 s)", f.seconds_scale ? "true" : "false");
    out << "reference (SHA-1 on 1e4-bit input, AES-128) calls per second:\n";
    for (const auto& m : kReferenceMachines)
        line("  %-7s %-14s sha1 %8.0f  aes %8.0f", m.name, m.cpu, m.sha1_per_sec, m.aes_per_sec);
}

}  // namespace bwpuzzle
