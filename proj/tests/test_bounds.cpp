#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bwpuzzle/bounds.hpp"
#include "bwpuzzle/errors.hpp"
#include "bwpuzzle/random.hpp"
#include "oracles/brute_lp.hpp"

using namespace bwpuzzle;
using namespace bwpuzzle::bounds;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Number of distinct values among c uniform draws from [0, N).
std::uint64_t draw_unique(Rng& rng, std::uint64_t N, std::uint64_t c, std::vector<std::uint32_t>& mark,
                          std::uint32_t stamp) {
    std::uint64_t u = 0;
    for (std::uint64_t k = 0; k < c; ++k) {
        auto x = uniform_below(rng, N);
        if (mark[x] != stamp) {
            mark[x] = stamp;
            ++u;
        }
    }
    return u;
}

BoundInputs reference_inputs() {
    BoundInputs in;
    in.N = 1e7;
    in.n = 1e4;
    in.L = 200;
    in.m = 10;
    in.q_H = 4000;
    in.V = 60;
    in.delta = 0.1;
    in.sigma = 1;
    in.A = 1;
    return in;
}

}  // namespace

TEST(ExpectedUnique, SmallCasesAndMonteCarlo) {
    EXPECT_EQ(expected_unique(8, 0), 0.0);
    EXPECT_NEAR(expected_unique(8, 1), 1.0, 1e-12);
    EXPECT_NEAR(expected_unique(8, 4), 8 * (1 - std::pow(7.0 / 8, 4)), 1e-12);
    EXPECT_NEAR(expected_unique(8, 4), 3.3105, 1e-4);
    Rng rng(1);
    std::vector<std::uint32_t> mark(8, 0);
    double sum = 0;
    for (std::uint32_t t = 1; t <= 100000; ++t) sum += static_cast<double>(draw_unique(rng, 8, 4, mark, t));
    EXPECT_NEAR(sum / 1e5, expected_unique(8, 4), 0.01 * expected_unique(8, 4));
    EXPECT_NEAR(expected_unique(1e12, 1e6), 1e6 - 0.5, 1e-3);
    EXPECT_THROW(expected_unique(0, 1), DomainError);
}

TEST(CouponTail, ReferencePointIsTiny) {
    const auto t = coupon_tail(1e5, 1e4, 0.1);
    EXPECT_TRUE(t.valid);
    EXPECT_GT(t.eta, 0);
    EXPECT_LT(t.tail, 1e-6);
    EXPECT_NEAR(t.mu, 0.9 * expected_unique(1e5, 1e4), 1e-9);
}

TEST(CouponTail, DeltaNearOneIsVacuouslySafe) {
    const auto t = coupon_tail(1e4, 1e3, 0.999999);
    EXPECT_TRUE(t.valid);
    EXPECT_GT(t.eta, 100);
    EXPECT_LT(t.tail, 1e-100);
}

TEST(CouponTail, MonteCarloRespectsBound) {
    const std::uint64_t N = 1000, c = 1000;
    const auto t = coupon_tail(N, c, 0.2);
    Rng rng(2);
    std::vector<std::uint32_t> mark(N, 0);
    int hits = 0;
    const int trials = 20000;
    for (int k = 1; k <= trials; ++k) hits += draw_unique(rng, N, c, mark, k) <= t.mu;
    const double freq = double(hits) / trials;
    const double noise = 3 * std::sqrt(std::max(t.tail, 1.0 / trials) / trials);
    EXPECT_LE(freq, t.tail + noise);
}

TEST(CouponTail, InvalidWhenEtaNonPositive) {
    // A single draw: mu < 1 and the standardized deviation is not positive.
    const auto t = coupon_tail(10, 0, 0.5);
    EXPECT_FALSE(t.valid);
    EXPECT_EQ(t.tail, 1.0);
    EXPECT_THROW(coupon_tail(10, 5, 0.0), DomainError);
    EXPECT_THROW(coupon_tail(10, 5, 1.0), DomainError);
}

TEST(UnionTail, IdentitiesAndReferenceValue) {
    EXPECT_DOUBLE_EQ(union_tail(1e5, 1e3, 10, 0.1, 1), coupon_tail(1e5, 1e4, 0.1).tail);
    double lg1 = 0, lg2 = 0;
    union_tail(1e7, 1e4, 3, 0.1, 1e6, &lg1);
    union_tail(1e7, 1e4, 3, 0.1, 2e6, &lg2);
    EXPECT_NEAR(lg2 - lg1, 3 * std::log(2.0), 1e-9);
    EXPECT_LT(union_tail(1e7, 1e4, 1, 0.1, 1e6), 1e-12);
    // Overflowing J^s stays finite in logs.
    double lg = 0;
    const double big = union_tail(1e7, 1e4, 1e4, 0.1, 1e300, &lg);
    EXPECT_EQ(big, std::exp(std::min(lg, 0.0)));
    EXPECT_TRUE(std::isfinite(lg));
}

TEST(InformedQueryFloor, Values) {
    EXPECT_EQ(informed_query_floor(std::exp2(-60), 60, 100), 0.0);
    EXPECT_NEAR(informed_query_floor(1, 60, 2000), 1000.5, 1e-9);
    EXPECT_EQ(informed_query_floor(0, 60, 10), 0.0);
}

TEST(InformedQueryFloor, MatchesSurvivalLp) {
    for (int L = 1; L <= 5; ++L)
        for (double e : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
            const double V = 8;
            const double eps = e + std::exp2(-V);
            const double closed = informed_query_floor(eps, V, L);
            const double brute = oracle::survival_lp(L, eps - std::exp2(-V));
            EXPECT_LE(rel(closed, brute), 1e-9) << L << ' ' << e;
        }
}

TEST(InformedQueryFloor, StoppingPolicyGridNeverBeatsFloor) {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int L = 1; L <= 4; ++L) {
        std::vector<int> ix(L, 0);
        for (;;) {
            std::vector<double> stop(L);
            for (int i = 0; i < L; ++i) stop[i] = grid[ix[i]];
            const auto o = oracle::sequential_guesser(stop);
            const double V = 30;
            EXPECT_GE(o.queries + 1e-12, informed_query_floor(o.confirm + std::exp2(-V), V, L));
            int p = 0;
            while (p < L && ++ix[p] == 5) ix[p++] = 0;
            if (p == L) break;
        }
        // Stopping only before the first query attains the floor.
        std::vector<double> stop(L, 0.0);
        stop[0] = 0.25;
        const auto o = oracle::sequential_guesser(stop);
        EXPECT_NEAR(o.queries, 0.75 * (L + 1) / 2, 1e-12);
    }
}

TEST(LpClosedForm, ValuesAndErrors) {
    EXPECT_NEAR(lp_closed_form(5, 0.3, 0, 0.7), 0.7, 1e-15);
    EXPECT_NEAR(lp_closed_form(5, 0.3, 5, 1), std::exp(-1.5), 1e-15);
    EXPECT_NEAR(lp_closed_form(3, 0.5, 1.5, 1), 1 - (1 - std::exp(-1.5)) / 2, 1e-12);
    EXPECT_NEAR(lp_closed_form(3, 0.5, 1.5, 1), 0.61157, 1e-5);
    EXPECT_THROW(lp_closed_form(3, -0.1, 1, 1), DomainError);
    EXPECT_THROW(lp_closed_form(3, 0.1, 1, 1.5), DomainError);
    EXPECT_THROW(lp_closed_form(3, 0.1, 3.5, 1), DomainError);
}

TEST(LpClosedForm, MatchesVertexEnumeration) {
    for (int L = 1; L <= 5; ++L)
        for (double d : {0.0, 0.05, 0.5, 2.0})
            for (double gamma : {0.2, 0.6, 1.0})
                for (double f : {0.0, 0.3, 0.77, 1.0}) {
                    const double beta = f * gamma * L;
                    EXPECT_LE(rel(lp_closed_form(L, d, beta, gamma), oracle::distribution_lp(L, d, beta, gamma)),
                              1e-9)
                        << L << ' ' << d << ' ' << gamma << ' ' << beta;
                }
}

TEST(UniqueFloorSingle, EndpointsAndMonteCarlo) {
    EXPECT_EQ(unique_floor_single(0, 1e4, 100, 50, 0.1), 0.0);
    EXPECT_NEAR(unique_floor_single(50, 1e4, 100, 50, 0.1), 0.9 * 1e4 * (1 - std::exp(-0.5)), 1e-9);
    EXPECT_THROW(unique_floor_single(51, 1e4, 100, 50, 0.1), DomainError);

    // Random stopping distributions over {0..L}; sampled unique-index means stay above the floor.
    const std::uint64_t N = 10000, n = 100, L = 50;
    Rng rng(3);
    std::vector<std::uint32_t> mark(N, 0);
    std::uint32_t stamp = 0;
    for (int dist = 0; dist < 5; ++dist) {
        std::vector<double> w(L + 1);
        double total = 0;
        for (auto& x : w) total += (x = uniform01(rng));
        double beta = 0;
        for (std::uint64_t i = 0; i <= L; ++i) beta += (w[i] /= total) * i;
        std::discrete_distribution<int> pick(w.begin(), w.end());
        double sum = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) sum += static_cast<double>(draw_unique(rng, N, n * pick(rng), mark, ++stamp));
        EXPECT_GE(sum / trials, unique_floor_single(beta, N, n, L, 0.1)) << dist;
    }
}

TEST(MultiUniqueMin, EndpointsAndPartitionEnumeration) {
    EXPECT_EQ(multi_unique_min(0, 5, 100, 10, 0.1), 0.0);
    EXPECT_NEAR(multi_unique_min(5, 5, 100, 10, 0.1), 0.9 * 100 * (1 - std::exp(-0.5)), 1e-12);
    for (int q = 1; q <= 5; ++q)
        for (int T = 0; T <= 15; ++T)
            for (double d : {0.01, 0.2, 1.0}) {
                const double N = 1000, delta = 0.1;
                const double brute = (1 - delta) * N * oracle::partition_min(T, q, d);
                EXPECT_LE(rel(multi_unique_min(T, q, N, d * N, delta), brute), 1e-9) << q << ' ' << T << ' ' << d;
            }
}

TEST(MultiUniqueAvgFloor, EndpointsAndLp) {
    EXPECT_EQ(multi_unique_avg_floor(0, 4, 100, 10, 0.1), 0.0);
    EXPECT_NEAR(multi_unique_avg_floor(4, 4, 100, 10, 0.1), 0.9 * 100 * (1 - std::exp(-0.4)), 1e-12);
    for (int q = 1; q <= 4; ++q)
        for (int PL = q; PL <= 12; ++PL)
            for (double d : {0.05, 0.5})
                for (double f : {0.0, 0.25, 0.5, 0.9, 1.0}) {
                    const double N = 1000, delta = 0.1;
                    const double beta = f * PL;
                    const double brute = (1 - delta) * N * oracle::averaged_partition_lp(PL, q, d, beta);
                    const double closed = multi_unique_avg_floor(beta, q, N, d * N, delta);
                    if (beta <= q * std::floor(double(PL) / q))
                        EXPECT_LE(rel(closed, brute), 1e-9) << q << ' ' << PL << ' ' << beta;
                    else
                        EXPECT_LE(closed, brute * (1 + 1e-9)) << q << ' ' << PL << ' ' << beta;
                }
}

TEST(SingleBound, Properties) {
    auto in = reference_inputs();
    const auto r = single_bound(in);
    const double dominant = 0.9 * 1e7 * (1 - std::exp(-0.2)) * (1 - 4001 * std::exp2(-60)) * 201 / 400;
    EXPECT_NEAR(r.dominant_term, dominant, 1e-6 * dominant);
    EXPECT_NEAR(r.penalty_terms[0].value, 200 * 59, 1e-9);
    EXPECT_LT(r.penalty_sum(), 0.02 * r.dominant_term);
    EXPECT_NEAR(r.total, r.dominant_term - r.penalty_sum(), 1e-6);
    double previous = -1;
    for (double s = 0; s <= 1.0001; s += 0.05) {
        in.sigma = std::min(s, 1.0);
        const auto t = single_bound(in).total;
        EXPECT_GE(t, previous);
        previous = t;
    }
    in.sigma = 4001 * std::exp2(-60);
    EXPECT_EQ(single_bound(in).total, 0.0);
    EXPECT_LE(single_bound(in).raw, 0.0);
}

TEST(MultiBound, ReferencePointAndTightness) {
    auto in = reference_inputs();
    const auto r = multi_bound(in);
    const double P = 10;
    const double per = r.dominant_term / P;
    EXPECT_NEAR(per, 0.9e7 * 201 * (1 - std::exp(-4)) / 8000, 1);
    EXPECT_NEAR(per, 2.22e5, 0.01e5);
    const double simple = simple_strategy_cost(1, 1e7, P, 200, 4000);
    EXPECT_NEAR(simple / P, 1e7 * 201 / 8000.0, 1e-6);
    EXPECT_NEAR(r.dominant_term / simple, 0.9 * (1 - std::exp(-4)), 1e-9);
    EXPECT_NEAR(r.dominant_term / simple, 0.883, 1e-3);
    const double ratio = r.total / simple;
    EXPECT_GE(ratio, 0.9 * (1 - std::exp(-4)) - 0.05);
    EXPECT_LE(ratio, 1.0);
    in.sigma = 0;
    EXPECT_EQ(multi_bound(in).total, 0.0);
}

TEST(MultiBound, LinearInPAndPenaltiesSmallWhenPassing) {
    auto in = reference_inputs();
    in.A = 1000;
    in.m = 100;
    const auto a = multi_bound(in);
    in.m = 200;
    const auto b = multi_bound(in);
    EXPECT_NEAR(b.dominant_term, 2 * a.dominant_term, 1e-6 * a.dominant_term);
    EXPECT_NEAR(b.total, 2 * a.total, 1e-6 * a.total);
    in.L = 100;
    in.m = 100;
    ASSERT_TRUE(check_parameters(in).all_pass());
    const auto c = multi_bound(in);
    EXPECT_LT(c.penalty_sum(), 0.1 * c.dominant_term);
    EXPECT_LE(c.total, c.dominant_term);
}

TEST(SimpleStrategyCost, Values) {
    EXPECT_EQ(simple_strategy_cost(0, 1e5, 200, 99, 1000), 0.0);
    EXPECT_DOUBLE_EQ(simple_strategy_cost(1, 1e5, 200, 99, 1000), 1e6);
    EXPECT_DOUBLE_EQ(simple_strategy_cost(1, 1e5, 200, 99, 500), 2e6);
    EXPECT_THROW(simple_strategy_cost(1, 1, 1, 1, 0), DomainError);
}

TEST(CheckParameters, ReferencePassesAndViolationsFail) {
    BoundInputs in = reference_inputs();
    in.L = 100;
    in.m = 1e4;
    in.A = 1e6;
    const auto r = check_parameters(in);
    EXPECT_TRUE(r.all_pass()) << r.failing().size();
    ASSERT_EQ(r.conditions.size(), 5u);
    ASSERT_EQ(r.ranges.size(), 5u);

    auto weak = in;
    weak.q_H = weak.N / weak.n;
    const auto w = check_parameters(weak);
    EXPECT_FALSE(w.conditions[1].pass);

    auto small_n = in;
    small_n.n = 1e3;
    small_n.q_H = 4e4;
    const auto s = check_parameters(small_n);
    EXPECT_FALSE(s.ranges[1].pass);
}

TEST(BoundInputs, Validation) {
    auto in = reference_inputs();
    in.delta = 0;
    EXPECT_THROW(multi_bound(in), DomainError);
    in = reference_inputs();
    in.sigma = 1.5;
    EXPECT_THROW(single_bound(in), DomainError);
    in = reference_inputs();
    in.q_H = 0;
    EXPECT_THROW(check_parameters(in), DomainError);
}
