#include "bwpuzzle/adversary.hpp"

#include <cmath>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

void ExperimentConfig::validate() const {
    params.validate();
    if (A == 0) throw ConfigError("A must be positive");
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw ConfigError("sigma must lie in [0, 1]");
    if (trials == 0) throw ConfigError("trials must be positive");
    if (omega.L != params.L) throw ConfigError("oracle L must equal puzzle L");
    omega.validate(params.n);
}

double ExperimentResult::bits_stddev() const {
    if (records.size() < 2) return 0.0;
    double mean = 0;
    for (const auto& r : records) mean += static_cast<double>(r.bits_total);
    mean /= static_cast<double>(records.size());
    double ss = 0;
    for (const auto& r : records) {
        double d = static_cast<double>(r.bits_total) - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(records.size() - 1));
}

double ExperimentResult::bits_standard_error() const {
    if (records.empty()) return 0.0;
    return bits_stddev() / std::sqrt(static_cast<double>(records.size()));
}

void ExperimentResult::write_csv(std::ostream& out) const {
    out << "trial,attempted,solved_all,bits_total,hash_total\n";
    for (const auto& r : records)
        out << r.trial << ',' << int(r.attempted) << ',' << int(r.solved_all) << ',' << r.bits_total << ','
            << r.hash_total << '\n';
}

void ExperimentResult::write_summary(std::ostream& out) const {
    out << "trials: " << records.size() << '\n'
        << "success_rate: " << success_rate << '\n'
        << "avg_bits: " << avg_bits << '\n'
        << "bits_standard_error: " << bits_standard_error() << '\n'
        << "avg_hash_queries: " << avg_hash_queries << '\n';
}

TrialContext::TrialContext(const ExperimentConfig& config, OmegaEnv& env, std::vector<Puzzle> puzzles, Rng& rng)
    : config_(config), env_(env), puzzles_(std::move(puzzles)), rng_(rng), answers_(puzzles_.size()) {}

AdversaryId TrialContext::owner(std::size_t p) const {
    return AdversaryId{static_cast<std::uint32_t>(p / config_.params.m)};
}

void TrialContext::submit_from_set(AdversaryId v, std::size_t p, std::uint64_t j) {
    const auto& pz = puzzle(p);
    const auto iset = index_set(pz.params, pz.k1, j);
    BitString s(iset.indices.size());
    for (std::size_t t = 0; t < iset.indices.size(); ++t) s.set(t, env_.content_query(v, iset.indices[t]));
    submit(p, Solution{hash_A(s, pz.params)});
}

void TrialContext::submit(std::size_t p, Solution s) { answers_.at(p) = std::move(s); }

SearchOutcome search_puzzle(TrialContext& ctx, AdversaryId v, std::size_t p, std::uint64_t& next_j) {
    const auto L = ctx.puzzle(p).params.L;
    for (; next_j <= L; ++next_j) {
        auto reply = ctx.env().hash_query(v, p, next_j);
        switch (reply.status) {
            case ReplyStatus::budget_exhausted:
                return SearchOutcome::out_of_budget;
            case ReplyStatus::puzzle_cap:
                return SearchOutcome::exhausted;
            case ReplyStatus::answered:
                if (reply.confirm) {
                    ctx.submit_from_set(v, p, next_j);
                    return SearchOutcome::confirmed;
                }
                break;
            case ReplyStatus::uninformed:
                break;
        }
    }
    return SearchOutcome::exhausted;
}

std::uint64_t simple_strategy_members(std::uint64_t P, std::uint64_t L, std::uint64_t q_H) {
    if (q_H == 0) throw ConfigError("q_H must be positive");
    const std::uint64_t work = P * (L + 1);
    const std::uint64_t denom = 2 * q_H;
    return (work + denom - 1) / denom;
}

namespace {

void solve_own(TrialContext& ctx) {
    const auto m = ctx.config().params.m;
    for (std::uint32_t v = 0; v < ctx.config().A; ++v) {
        AdversaryId id{v};
        ctx.env().grant_full_content(id);
        for (std::uint64_t k = 0; k < m; ++k) {
            std::uint64_t j = 1;
            if (search_puzzle(ctx, id, v * m + k, j) == SearchOutcome::out_of_budget) break;
        }
    }
}

}  // namespace

Strategy honest_strategy() {
    return [](TrialContext& ctx) {
        solve_own(ctx);
        return true;
    };
}

Strategy greedy_strategy() {
    return [](TrialContext& ctx) {
        if (!(uniform01(ctx.rng()) < ctx.config().sigma)) return false;
        solve_own(ctx);
        return true;
    };
}

Strategy simple_collusion_strategy() {
    return [](TrialContext& ctx) {
        const auto& cfg = ctx.config();
        if (!(uniform01(ctx.rng()) < cfg.sigma)) return false;
        const auto k = simple_strategy_members(cfg.total_puzzles(), cfg.params.L, cfg.omega.q_H);
        if (k > cfg.A) throw ConfigError("simple strategy needs more members than A");
        for (std::uint64_t v = 0; v < k; ++v) ctx.env().grant_full_content(AdversaryId{static_cast<std::uint32_t>(v)});
        std::uint32_t member = 0;
        for (std::size_t p = 0; p < ctx.puzzle_count(); ++p) {
            std::uint64_t j = 1;
            for (;;) {
                auto outcome = search_puzzle(ctx, AdversaryId{member}, p, j);
                if (outcome != SearchOutcome::out_of_budget) break;
                if (++member == k) return true;
            }
        }
        return true;
    };
}

ExperimentResult run_custom(const ExperimentConfig& config, const Content& content, const Strategy& strategy) {
    config.validate();
    if (content.size() != config.params.N) throw ConfigError("content size does not match N");
    ExperimentResult result;
    double bits = 0, hashes = 0;
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        Rng puzzle_rng(derive_seed(config.seed, t, 0));
        Rng strategy_rng(derive_seed(config.seed, t, 1));
        OmegaEnv env(content, config.omega, config.A);
        std::vector<Puzzle> puzzles;
        std::vector<PuzzleSecret> secrets;
        const auto P = config.total_puzzles();
        puzzles.reserve(P);
        secrets.reserve(P);
        for (std::uint64_t p = 0; p < P; ++p) {
            auto g = generate_puzzle(config.params, content, puzzle_rng);
            env.add_puzzle(g.puzzle);
            puzzles.push_back(std::move(g.puzzle));
            secrets.push_back(std::move(g.secret));
        }
        TrialContext ctx(config, env, std::move(puzzles), strategy_rng);
        TrialRecord rec;
        rec.trial = t;
        rec.attempted = strategy(ctx);
        rec.solved_all = true;
        for (std::uint64_t p = 0; p < P; ++p) {
            const auto& s = ctx.submitted(p);
            if (!s || !verify(secrets[p], *s)) {
                rec.solved_all = false;
                break;
            }
        }
        const auto stats = env.stats();
        rec.bits_total = stats.total_content_bits();
        rec.hash_total = stats.total_hash_queries();
        bits += static_cast<double>(rec.bits_total);
        hashes += static_cast<double>(rec.hash_total);
        successes += rec.solved_all;
        result.records.push_back(rec);
    }
    const auto T = static_cast<double>(config.trials);
    result.success_rate = static_cast<double>(successes) / T;
    result.avg_bits = bits / T;
    result.avg_hash_queries = hashes / T;
    return result;
}

ExperimentResult run_honest(const ExperimentConfig& config, const Content& content) {
    return run_custom(config, content, honest_strategy());
}

ExperimentResult run_simple_collusion(const ExperimentConfig& config, const Content& content) {
    config.validate();
    const auto k = simple_strategy_members(config.total_puzzles(), config.params.L, config.omega.q_H);
    if (k > config.A) throw ConfigError("simple strategy needs more members than A");
    return run_custom(config, content, simple_collusion_strategy());
}

}  // namespace bwpuzzle
