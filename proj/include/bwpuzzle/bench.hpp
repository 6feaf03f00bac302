#pragma once

#include <array>
#include <ostream>

#include "bwpuzzle/params.hpp"

namespace bwpuzzle {

struct BenchOptions {
    PuzzleParams params{10'000'000, 10'000, 100, 20, 3000, 256};
    double duration_s = 1.0;  ///< per measured primitive, at least 1
    double warmup_s = 1.0;
};

struct BenchReport {
    double hash_calls_per_sec = 0;  ///< H on n-bit inputs
    double prf_calls_per_sec = 0;   ///< f2 calls, one content index each
    double theta_s = 0;
    double derived_q_H = 0;         ///< hash_calls_per_sec * theta_s
    PuzzleParams params;
};

/// Re-evaluation of the three practical feasibility conclusions with the
/// measured rates.
struct Feasibility {
    double hash_capacity = 0;     ///< H calls that fit in theta
    double query_capacity = 0;    ///< full queries (H plus n index draws) in theta
    double required_queries = 0;  ///< L m needed for n L m >= 2N
    double solve_time_s = 0;      ///< required_queries full queries
    bool capped_by_1e6 = false;   ///< (1) at most 1e6 hash calls fit in theta
    bool enough_queries = false;  ///< (2) hash_capacity >= required_queries
    bool seconds_scale = false;   ///< (3) solve_time_s in [0.1, 10]
};

struct ReferenceMachine {
    const char* name;
    const char* cpu;
    double sha1_per_sec;
    double aes_per_sec;
};

inline constexpr std::array<ReferenceMachine, 4> kReferenceMachines{{
    {"pc3000", "3.0GHz 64-bit", 202165, 4059157},
    {"pc2000", "2.0GHz", 71016, 2605490},
    {"pc850", "850MHz", 39151, 1086667},
    {"pc600", "600MHz", 29064, 789624},
}};

/// Single-threaded wall-clock measurement; the warmup is not counted.
BenchReport run_bench(const BenchOptions& options);

Feasibility evaluate_feasibility(const BenchReport& report);

void print_bench(std::ostream& out, const BenchReport& report, const Feasibility& verdict);

}  // namespace bwpuzzle
