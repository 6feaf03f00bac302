#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "bwpuzzle/oracle.hpp"
#include "bwpuzzle/puzzle.hpp"

namespace bwpuzzle {

struct ExperimentConfig {
    PuzzleParams params;       // m is puzzles per adversary
    std::uint32_t A = 1;       ///< colluding adversaries
    double sigma = 1.0;        ///< attempt probability for coin-flipping strategies
    OmegaConfig omega;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;

    std::uint64_t total_puzzles() const { return static_cast<std::uint64_t>(A) * params.m; }
    void validate() const;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    bool attempted = false;
    bool solved_all = false;
    std::uint64_t bits_total = 0;
    std::uint64_t hash_total = 0;
};

struct ExperimentResult {
    double success_rate = 0;
    double avg_bits = 0;
    double avg_hash_queries = 0;
    std::vector<TrialRecord> records;

    double bits_stddev() const;
    double bits_standard_error() const;
    /// trial,attempted,solved_all,bits_total,hash_total
    void write_csv(std::ostream& out) const;
    /// key: value lines
    void write_summary(std::ostream& out) const;
};

/// What a strategy sees during one trial. Puzzle p belongs to adversary p / m.
class TrialContext {
public:
    TrialContext(const ExperimentConfig& config, OmegaEnv& env, std::vector<Puzzle> puzzles, Rng& rng);

    const ExperimentConfig& config() const { return config_; }
    OmegaEnv& env() { return env_; }
    Rng& rng() { return rng_; }

    std::size_t puzzle_count() const { return puzzles_.size(); }
    const Puzzle& puzzle(std::size_t p) const { return puzzles_.at(p); }
    AdversaryId owner(std::size_t p) const;

    /// Reads the bits of set j through v's content queries and submits the answer for p.
    void submit_from_set(AdversaryId v, std::size_t p, std::uint64_t j);
    void submit(std::size_t p, Solution s);
    const std::optional<Solution>& submitted(std::size_t p) const { return answers_.at(p); }

private:
    const ExperimentConfig& config_;
    OmegaEnv& env_;
    std::vector<Puzzle> puzzles_;
    Rng& rng_;
    std::vector<std::optional<Solution>> answers_;
};

/// Runs the strategy; returns whether it attempted the challenge.
using Strategy = std::function<bool(TrialContext&)>;

enum class SearchOutcome { confirmed, out_of_budget, exhausted };

/// Queries sets next_j, next_j+1, ... of puzzle p as adversary v and submits
/// on confirm. On budget exhaustion `next_j` is left at the set to retry.
SearchOutcome search_puzzle(TrialContext& ctx, AdversaryId v, std::size_t p, std::uint64_t& next_j);

/// Members the simple strategy needs: ceil(P (L+1) / (2 q_H)).
std::uint64_t simple_strategy_members(std::uint64_t P, std::uint64_t L, std::uint64_t q_H);

Strategy honest_strategy();
/// With probability sigma, ceil(P(L+1)/(2 q_H)) members take the whole
/// content and solve all puzzles in turn; otherwise nothing is fetched.
Strategy simple_collusion_strategy();
/// With probability sigma, every adversary takes the whole content and
/// solves its own m puzzles.
Strategy greedy_strategy();

ExperimentResult run_custom(const ExperimentConfig& config, const Content& content, const Strategy& strategy);
ExperimentResult run_honest(const ExperimentConfig& config, const Content& content);
/// Throws ConfigError if the strategy needs more than A members.
ExperimentResult run_simple_collusion(const ExperimentConfig& config, const Content& content);

}  // namespace bwpuzzle
