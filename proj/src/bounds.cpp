#include "bwpuzzle/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle::bounds {

namespace {

std::string fmt(const char* f, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double pow2_neg(double V) { return std::exp2(-V); }

}  // namespace

void BoundInputs::validate() const {
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    if (!(sigma >= 0 && sigma <= 1)) throw DomainError("sigma must lie in [0, 1]");
    if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("epsilon must lie in [0, 1]");
    if (!(N > 0 && n > 0 && L > 0 && m > 0 && q_H > 0 && A > 0 && V > 0)) throw DomainError("counts must be positive");
    if (P < 0) throw DomainError("P must be non-negative");
}

double BoundResult::penalty_sum() const {
    double s = 0;
    for (const auto& p : penalty_terms) s += p.value;
    return s;
}

double expected_unique(double N, double c) {
    if (N < 1) throw DomainError("N must be at least 1");
    if (c < 0) throw DomainError("draw count must be non-negative");
    if (c == 0) return 0.0;
    if (N == 1) return 1.0;
    return -N * std::expm1(c * std::log1p(-1.0 / N));
}

CouponTail coupon_tail(double N, double c, double delta) {
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    CouponTail out;
    out.mu = (1 - delta) * expected_unique(N, c);
    if (!(out.mu > 0 && out.mu < N)) return out;
    const double spent = -N * std::log1p(-out.mu / N);
    const double spread = std::sqrt(N * out.mu / (N - out.mu));
    out.eta = (c - spent) / spread;
    if (!(out.eta > 0)) return out;
    out.valid = true;
    out.log_tail = -0.5 * out.eta * out.eta - std::log(std::sqrt(2 * std::numbers::pi) * out.eta);
    out.log_tail = std::min(out.log_tail, 0.0);
    out.tail = std::exp(out.log_tail);
    return out;
}

double union_tail(double N, double n, double s, double delta, double J, double* log_out, bool* valid_out) {
    if (!(s >= 1 && J >= 1)) throw DomainError("s and J must be at least 1");
    const auto t = coupon_tail(N, s * n, delta);
    const double lg = t.valid ? t.log_tail + s * std::log(J) : 0.0;
    if (log_out) *log_out = lg;
    if (valid_out) *valid_out = t.valid;
    return t.valid ? std::exp(std::min(lg, 0.0)) : 1.0;
}

double informed_query_floor(double epsilon, double V, double L) {
    return std::max(0.0, (epsilon - pow2_neg(V)) * (L + 1) / 2);
}

double lp_closed_form(double L, double d, double beta, double gamma) {
    if (!(L > 0)) throw DomainError("L must be positive");
    if (!(d >= 0)) throw DomainError("d must be non-negative");
    if (!(gamma >= 0 && gamma <= 1)) throw DomainError("gamma must lie in [0, 1]");
    if (!(beta >= 0 && beta <= gamma * L * (1 + 1e-12))) throw DomainError("beta must lie in [0, gamma L]");
    return gamma + std::expm1(-L * d) * beta / L;
}

double unique_floor_single(double beta, double N, double n, double L, double delta) {
    if (!(beta >= 0 && beta <= L)) throw DomainError("beta must lie in [0, L]");
    return (1 - delta) * N * -std::expm1(-L * n / N) * beta / L;
}

double multi_unique_min(double T, double q_H, double N, double n, double delta) {
    if (!(T >= 0)) throw DomainError("T must be non-negative");
    if (!(q_H > 0)) throw DomainError("q_H must be positive");
    const double t = std::floor(T / q_H);
    const double rest = T - q_H * t;
    return (1 - delta) * N * (t * -std::expm1(-q_H * n / N) + -std::expm1(-rest * n / N));
}

double multi_unique_avg_floor(double beta, double q_H, double N, double n, double delta) {
    if (!(beta >= 0)) throw DomainError("beta must be non-negative");
    if (!(q_H > 0)) throw DomainError("q_H must be positive");
    return (1 - delta) * N * beta * -std::expm1(-q_H * n / N) / q_H;
}

namespace {

BoundResult finish(double dominant, std::vector<PenaltyTerm> penalties) {
    BoundResult r;
    r.penalty_terms = std::move(penalties);
    r.raw = dominant - r.penalty_sum();
    r.dominant_term = std::max(0.0, dominant);
    r.total = std::max(0.0, r.raw);
    return r;
}

}  // namespace

BoundResult single_bound(const BoundInputs& in) {
    in.validate();
    const double adv = in.sigma - (in.q_H + 1) * pow2_neg(in.V);
    const double dominant =
        (1 - in.delta) * in.N * -std::expm1(-in.L * in.n / in.N) * adv * (in.L + 1) / (2 * in.L);
    return finish(dominant, {{"L(V-1)", in.L * (in.V - 1)},
                             {"L n q_H / 2^V", in.L * in.n * in.q_H * pow2_neg(in.V)},
                             {"V", in.V}});
}

BoundResult multi_bound(const BoundInputs& in) {
    in.validate();
    const double P = in.puzzles();
    const double adv = in.sigma - (in.q_H + 1) * pow2_neg(in.V);
    const double dominant =
        (1 - in.delta) * in.N * P * adv * (in.L + 1) * -std::expm1(-in.q_H * in.n / in.N) / (2 * in.q_H);
    return finish(dominant, {{"P L (V-1)", P * in.L * (in.V - 1)},
                             {"P L n A q_H / 2^V", P * in.L * in.n * in.A * in.q_H * pow2_neg(in.V)},
                             {"V P", in.V * P}});
}

double simple_strategy_cost(double sigma, double N, double P, double L, double q_H) {
    if (!(q_H > 0)) throw DomainError("q_H must be positive");
    return sigma * N * P * (L + 1) / (2 * q_H);
}

bool ConditionReport::all_pass() const {
    auto ok = [](const Check& c) { return c.pass; };
    return std::all_of(conditions.begin(), conditions.end(), ok) && std::all_of(ranges.begin(), ranges.end(), ok);
}

std::vector<std::string> ConditionReport::failing() const {
    std::vector<std::string> out;
    for (const auto* group : {&conditions, &ranges})
        for (const auto& c : *group)
            if (!c.pass) out.push_back(c.name);
    return out;
}

namespace {

// Largest union-tail value over s in [1, s_max]: every s up to 4096, then a
// 0.5% geometric grid, then s_max itself.
double worst_union_tail(const BoundInputs& in, double J, double s_max, double& worst_s) {
    double worst_log = -INFINITY;
    worst_s = 1;
    auto probe = [&](double s) {
        double lg = 0;
        bool valid = false;
        union_tail(in.N, in.n, s, in.delta, J, &lg, &valid);
        if (!valid) lg = 0;
        if (lg > worst_log) {
            worst_log = lg;
            worst_s = s;
        }
    };
    double s = 1;
    for (; s <= std::min(s_max, 4096.0); s += 1) probe(s);
    for (; s < s_max; s = std::ceil(s * 1.005)) probe(s);
    probe(s_max);
    return std::exp(std::min(worst_log, 0.0));
}

}  // namespace

ConditionReport check_parameters(const BoundInputs& in) {
    in.validate();
    ConditionReport r;
    const double P = in.puzzles();
    const double J = P * in.L;
    const double s_max = std::max(1.0, std::min(J, in.A * in.q_H));
    const double two_V = std::exp2(in.V);

    double worst_s = 1;
    const double worst = worst_union_tail(in, J, s_max, worst_s);
    r.conditions.push_back({"cond1_delta_small", in.delta <= 0.1 && worst < kTailThreshold,
                            fmt("delta=%g, max union tail %.3g", in.delta, worst) + fmt(" at s=%.0f", worst_s)});
    const double ratio = in.q_H * in.n / in.N;
    r.conditions.push_back({"cond2_exp_small", ratio >= 4.0, fmt("q_H n / N = %g (need >= 4)", ratio)});
    r.conditions.push_back({"cond3_2V_much_larger", two_V >= kMuchFactor * in.A * in.q_H,
                            fmt("2^V = %.4g, 100 A q_H = %.4g", two_V, kMuchFactor * in.A * in.q_H)});
    r.conditions.push_back({"cond4_2V_ge_nAq", two_V >= in.n * in.A * in.q_H,
                            fmt("2^V = %.4g, n A q_H = %.4g", two_V, in.n * in.A * in.q_H)});
    r.conditions.push_back({"cond5_V_much_smaller", in.V * kMuchFactor <= in.n,
                            fmt("V = %g, n / 100 = %g", in.V, in.n / kMuchFactor)});

    r.ranges.push_back({"range_N", in.N >= 1e7, fmt("N = %g (need >= 1e7)", in.N)});
    r.ranges.push_back({"range_n", in.n >= 1e4 && in.n <= 1e6, fmt("n = %g (need 1e4..1e6)", in.n)});
    r.ranges.push_back({"range_Lm", in.L * in.m <= 1e6, fmt("L m = %g (need <= 1e6)", in.L * in.m)});
    r.ranges.push_back({"range_qn", in.q_H * in.n >= 4 * in.N, fmt("q_H n = %g, 4N = %g", in.q_H * in.n, 4 * in.N)});
    r.ranges.push_back({"range_qH", in.q_H <= 1e6, fmt("q_H = %g (need <= 1e6)", in.q_H)});
    return r;
}

}  // namespace bwpuzzle::bounds
