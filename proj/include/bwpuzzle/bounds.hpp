#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bwpuzzle::bounds {

struct BoundInputs {
    double N = 0;
    double n = 0;
    double L = 0;
    double m = 1;
    double q_H = 0;
    double V = 60;
    double delta = 0.1;
    double sigma = 1.0;
    double epsilon = 1.0;
    double A = 1;
    double P = 0;  ///< 0 means A * m

    double puzzles() const { return P > 0 ? P : A * m; }
    void validate() const;
};

struct CouponTail {
    double mu = 0;
    double eta = 0;
    double tail = 1;
    double log_tail = 0;
    bool valid = false;
};

struct PenaltyTerm {
    std::string name;
    double value = 0;
};

struct BoundResult {
    double dominant_term = 0;
    std::vector<PenaltyTerm> penalty_terms;
    double raw = 0;    ///< unclamped dominant minus penalties
    double total = 0;  ///< max(0, raw)

    double penalty_sum() const;
};

/// N(1 - (1 - 1/N)^c)
double expected_unique(double N, double c);

CouponTail coupon_tail(double N, double c, double delta);

/// min(1, tail(N, s n, delta) * J^s), evaluated in logs. `log_out` receives
/// the natural log of the unclamped product when non-null.
double union_tail(double N, double n, double s, double delta, double J, double* log_out = nullptr,
                  bool* valid_out = nullptr);

/// max(0, (epsilon - 2^-V)(L+1)/2)
double informed_query_floor(double epsilon, double V, double L);

/// gamma - (1 - e^{-L d}) beta / L
double lp_closed_form(double L, double d, double beta, double gamma);

/// (1-delta) N (1 - e^{-L n/N}) beta / L
double unique_floor_single(double beta, double N, double n, double L, double delta);

/// (1-delta) N [t(1 - e^{-q_H n/N}) + (1 - e^{-(T - q_H t) n/N})], t = floor(T/q_H)
double multi_unique_min(double T, double q_H, double N, double n, double delta);

/// (1-delta) N beta (1 - e^{-q_H n/N}) / q_H
double multi_unique_avg_floor(double beta, double q_H, double N, double n, double delta);

BoundResult single_bound(const BoundInputs& in);
BoundResult multi_bound(const BoundInputs& in);

/// sigma N P (L+1) / (2 q_H)
double simple_strategy_cost(double sigma, double N, double P, double L, double q_H);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ConditionReport {
    std::vector<Check> conditions;  // five tightness conditions
    std::vector<Check> ranges;      // five parameter ranges
    bool all_pass() const;
    std::vector<std::string> failing() const;
};

/// "Much larger" and "much smaller" use a factor of 100.
inline constexpr double kMuchFactor = 100.0;
inline constexpr double kTailThreshold = 1e-12;

ConditionReport check_parameters(const BoundInputs& in);

}  // namespace bwpuzzle::bounds
