#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bwpuzzle/adversary.hpp"
#include "bwpuzzle/bounds.hpp"
#include "bwpuzzle/errors.hpp"

using namespace bwpuzzle;

namespace {

ExperimentConfig make_config(std::uint64_t N, std::uint64_t n, std::uint64_t L, std::uint64_t m, std::uint32_t A,
                             std::uint64_t q_H, double sigma, std::uint64_t trials, std::uint64_t V = 10) {
    ExperimentConfig c;
    c.params = PuzzleParams{N, n, L, m, 1000, 256};
    c.A = A;
    c.sigma = sigma;
    c.omega = OmegaConfig{V, q_H, L};
    c.trials = trials;
    c.seed = 99;
    return c;
}

Content content_for(const ExperimentConfig& c) {
    Rng rng(derive_seed(c.seed, 123));
    return Content::random(c.params.N, rng);
}

}  // namespace

TEST(Adversary, HonestFullBudgetAlwaysSucceeds) {
    auto c = make_config(2000, 20, 10, 1, 1, 10, 0.3, 30);
    const auto content = content_for(c);
    const auto r = run_honest(c, content);
    EXPECT_DOUBLE_EQ(r.success_rate, 1.0);
    EXPECT_DOUBLE_EQ(r.avg_bits, 2000.0);
    c.sigma = 0.9;
    EXPECT_DOUBLE_EQ(run_honest(c, content).success_rate, 1.0);
}

TEST(Adversary, HonestMeanQueriesNearMidpoint) {
    auto c = make_config(2000, 16, 20, 10, 2, 200, 1.0, 100);
    const auto r = run_honest(c, content_for(c));
    const double per_puzzle = r.avg_hash_queries / static_cast<double>(c.total_puzzles());
    EXPECT_NEAR(per_puzzle, 10.5, 10.5 * 0.05);
}

TEST(Adversary, HonestShortBudgetIsPartialNotError) {
    auto c = make_config(2000, 16, 20, 5, 1, 20, 1.0, 40);
    const auto r = run_honest(c, content_for(c));
    EXPECT_LT(r.success_rate, 1.0);
    for (const auto& rec : r.records) EXPECT_LE(rec.hash_total, 20u);
}

TEST(Adversary, SimpleSigmaZeroDownloadsNothing) {
    auto c = make_config(5000, 20, 19, 10, 10, 100, 0.0, 20);
    const auto r = run_simple_collusion(c, content_for(c));
    EXPECT_DOUBLE_EQ(r.avg_bits, 0.0);
    EXPECT_DOUBLE_EQ(r.success_rate, 0.0);
}

TEST(Adversary, SimpleMatchesFormulaOnExactMemberCount) {
    // P = 200, L = 99, q_H = 1000: ceil(200 * 100 / 2000) = 10 members.
    auto c = make_config(100000, 20, 99, 20, 10, 1000, 1.0, 3);
    EXPECT_EQ(simple_strategy_members(200, 99, 1000), 10u);
    const auto r = run_simple_collusion(c, content_for(c));
    EXPECT_DOUBLE_EQ(r.avg_bits, 1e6);
    EXPECT_DOUBLE_EQ(bounds::simple_strategy_cost(1.0, 1e5, 200, 99, 1000), 1e6);
}

TEST(Adversary, SimpleTooFewAdversariesIsConfigError) {
    // P = 150 needs ceil(150 * 100 / 2000) = 8 members.
    auto c = make_config(5000, 20, 99, 30, 5, 1000, 1.0, 1);
    EXPECT_THROW(run_simple_collusion(c, content_for(c)), ConfigError);
}

TEST(Adversary, SimpleAverageTracksCeilingAdjustedCost) {
    // x = P(L+1)/(2 q_H) = 4.5, so 5 members carry 10% slack.
    auto c = make_config(3000, 12, 19, 9, 10, 200, 0.6, 200);
    const double x = 90.0 * 20 / 400;
    ASSERT_EQ(simple_strategy_members(90, 19, 200), 5u);
    ASSERT_GE(5 * 2 * 200, 1.1 * 90 * 20);
    const auto r = run_simple_collusion(c, content_for(c));
    double attempted = 0;
    for (const auto& rec : r.records) attempted += rec.attempted;
    const double sigma_hat = attempted / 200.0;
    EXPECT_NEAR(r.avg_bits, sigma_hat * 5 * 3000, 1e-9);
    EXPECT_NEAR(r.avg_bits, 0.6 * std::ceil(x) * 3000, 0.03 * 0.6 * std::ceil(x) * 3000 + 3 * r.bits_standard_error());
}

TEST(Adversary, SimpleSuccessRisesWithP) {
    double previous = -1;
    double last = 0;
    for (std::uint64_t P : {10, 40, 160}) {
        const auto q_H = static_cast<std::uint64_t>(std::llround(1.1 * P * 20 / 10.0));
        auto c = make_config(3000, 12, 19, P, 5, q_H, 1.0, 200);
        // One adversary per five puzzles would change m; keep A = 5 members.
        c.params.m = P / 5;
        ASSERT_EQ(simple_strategy_members(P, 19, q_H), 5u);
        const auto r = run_simple_collusion(c, content_for(c));
        EXPECT_GE(r.success_rate, previous - 0.05) << P;
        previous = r.success_rate;
        last = r.success_rate;
    }
    EXPECT_GT(last, 0.95);
}

TEST(Adversary, GreedyFullParticipationCostsAN) {
    auto c = make_config(4000, 16, 10, 2, 3, 20, 1.0, 10);
    const auto r = run_custom(c, content_for(c), greedy_strategy());
    EXPECT_DOUBLE_EQ(r.avg_bits, 3 * 4000.0);
    EXPECT_DOUBLE_EQ(r.success_rate, 1.0);
}

TEST(Adversary, GiveUpStrategyCostsNothing) {
    auto c = make_config(4000, 16, 10, 2, 3, 20, 1.0, 10);
    const auto r = run_custom(c, content_for(c), [](TrialContext&) { return false; });
    EXPECT_DOUBLE_EQ(r.avg_bits, 0.0);
    EXPECT_DOUBLE_EQ(r.success_rate, 0.0);
}

TEST(Adversary, ReplayingSimpleThroughCustomIsIdentical) {
    auto c = make_config(3000, 12, 19, 9, 10, 200, 0.5, 30);
    const auto content = content_for(c);
    const auto a = run_simple_collusion(c, content);
    const auto b = run_custom(c, content, simple_collusion_strategy());
    std::ostringstream sa, sb;
    a.write_csv(sa);
    b.write_csv(sb);
    EXPECT_EQ(sa.str(), sb.str());
}

TEST(Adversary, PartialContentStrategyIsRefusedByOracle) {
    // Each adversary fetches only the first half of the content and still tries.
    auto c = make_config(4000, 40, 10, 1, 2, 20, 1.0, 10, 5);
    const auto r = run_custom(c, content_for(c), [](TrialContext& ctx) {
        for (std::uint32_t v = 0; v < ctx.config().A; ++v) {
            for (std::uint64_t i = 0; i < ctx.config().params.N / 2; ++i) ctx.env().content_query({v}, i);
            std::uint64_t j = 1;
            search_puzzle(ctx, {v}, v, j);
        }
        return true;
    });
    EXPECT_DOUBLE_EQ(r.avg_bits, 4000.0);
    EXPECT_LT(r.success_rate, 0.2);
}

TEST(Adversary, SeedDeterminismAndCsv) {
    auto c = make_config(3000, 12, 19, 9, 10, 200, 0.5, 10);
    const auto content = content_for(c);
    std::ostringstream a, b;
    run_simple_collusion(c, content).write_csv(a);
    run_simple_collusion(c, content).write_csv(b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "trial,attempted,solved_all,bits_total,hash_total");
    std::ostringstream s;
    run_simple_collusion(c, content).write_summary(s);
    EXPECT_NE(s.str().find("success_rate: "), std::string::npos);
}

TEST(Adversary, ConfigValidation) {
    auto c = make_config(3000, 12, 19, 9, 10, 200, 1.5, 10);
    EXPECT_THROW(c.validate(), ConfigError);
    c.sigma = 0.5;
    c.trials = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.trials = 1;
    c.omega.L = 18;
    EXPECT_THROW(c.validate(), ConfigError);
}
