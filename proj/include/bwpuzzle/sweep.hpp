#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bwpuzzle/adversary.hpp"
#include "bwpuzzle/bounds.hpp"
#include "bwpuzzle/config.hpp"

namespace bwpuzzle {

enum class StrategyKind { simple, honest, greedy };

StrategyKind parse_strategy(const std::string& name);
std::string to_string(StrategyKind kind);

/// One simulate run: a strategy swept over adversary counts.
struct SimulationConfig {
    PuzzleParams params{100'000, 100, 200, 10, 3000, 256};
    std::uint64_t V = 60;
    std::uint64_t q_H = 4000;
    double delta = 0.1;
    double sigma = 1.0;
    std::uint64_t trials = 3;
    std::uint64_t seed = 1;
    StrategyKind strategy = StrategyKind::simple;
    std::vector<std::uint64_t> A_values{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};

    /// Keys: N n L m theta_ms kappa V q_H delta sigma trials seed strategy A.
    static SimulationConfig from(const KeyValueConfig& kv);
    ExperimentConfig experiment(std::uint32_t A) const;
    bounds::BoundInputs bound_inputs(std::uint32_t A, double sigma) const;
};

struct SweepRow {
    std::uint64_t A = 0;
    std::uint64_t P = 0;
    std::uint64_t members = 0;       ///< adversaries that fetched content, averaged over attempting trials
    double strategy_bits = 0;
    double bits_se = 0;
    double formula_bits = 0;         ///< sigma N P (L+1) / (2 q_H)
    double bound_bits = 0;           ///< multi_bound total at the configured sigma
    double bound_dominant = 0;
    double success_rate = 0;
    std::string status = "ok";
};

/// Content is drawn once from the seed; each A uses derived trial seeds.
/// Infeasible rows carry a status message and the sweep continues.
std::vector<SweepRow> run_sweep(const SimulationConfig& config);

inline constexpr const char* kSweepSchema = "# bwpuzzle sweep v1";
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_summary(std::ostream& out, const SimulationConfig& config, const std::vector<SweepRow>& rows);

ExperimentResult run_strategy(StrategyKind kind, const ExperimentConfig& config, const Content& content);

}  // namespace bwpuzzle
