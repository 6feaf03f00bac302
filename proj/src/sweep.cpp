#include "bwpuzzle/sweep.hpp"

#include <cstdio>
#include <limits>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

StrategyKind parse_strategy(const std::string& name) {
    if (name == "simple") return StrategyKind::simple;
    if (name == "honest") return StrategyKind::honest;
    if (name == "greedy") return StrategyKind::greedy;
    throw ConfigError("unknown strategy '" + name + "' (simple, honest, greedy)");
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::simple: return "simple";
        case StrategyKind::honest: return "honest";
        case StrategyKind::greedy: return "greedy";
    }
    return "?";
}

SimulationConfig SimulationConfig::from(const KeyValueConfig& kv) {
    kv.require_known({"N", "n", "L", "m", "theta_ms", "kappa", "V", "q_H", "delta", "sigma", "trials", "seed",
                      "strategy", "A"});
    SimulationConfig c;
    c.params.N = kv.get_u64("N", c.params.N);
    c.params.n = kv.get_u64("n", c.params.n);
    c.params.L = kv.get_u64("L", c.params.L);
    c.params.m = kv.get_u64("m", c.params.m);
    c.params.theta_ms = kv.get_u64("theta_ms", c.params.theta_ms);
    c.params.kappa = kv.get_u64("kappa", c.params.kappa);
    c.V = kv.get_u64("V", c.V);
    c.q_H = kv.get_u64("q_H", c.q_H);
    c.delta = kv.get_double("delta", c.delta);
    c.sigma = kv.get_double("sigma", c.sigma);
    c.trials = kv.get_u64("trials", c.trials);
    c.seed = kv.get_u64("seed", c.seed);
    c.strategy = parse_strategy(kv.get("strategy", "simple"));
    c.A_values = kv.get_u64_list("A", c.A_values);
    try {
        c.params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    for (auto A : c.A_values)
        if (A == 0 || A > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("A values must be positive");
    if (c.trials == 0) throw ConfigError("trials must be positive");
    return c;
}

ExperimentConfig SimulationConfig::experiment(std::uint32_t A) const {
    ExperimentConfig e;
    e.params = params;
    e.A = A;
    e.sigma = sigma;
    e.omega = OmegaConfig{V, q_H, params.L};
    e.trials = trials;
    e.seed = derive_seed(seed, A, 2);
    return e;
}

bounds::BoundInputs SimulationConfig::bound_inputs(std::uint32_t A, double s) const {
    bounds::BoundInputs in;
    in.N = static_cast<double>(params.N);
    in.n = static_cast<double>(params.n);
    in.L = static_cast<double>(params.L);
    in.m = static_cast<double>(params.m);
    in.q_H = static_cast<double>(q_H);
    in.V = static_cast<double>(V);
    in.delta = delta;
    in.sigma = s;
    in.A = A;
    return in;
}

ExperimentResult run_strategy(StrategyKind kind, const ExperimentConfig& config, const Content& content) {
    switch (kind) {
        case StrategyKind::simple: return run_simple_collusion(config, content);
        case StrategyKind::honest: return run_honest(config, content);
        case StrategyKind::greedy: return run_custom(config, content, greedy_strategy());
    }
    throw ConfigError("unknown strategy");
}

std::vector<SweepRow> run_sweep(const SimulationConfig& config) {
    Rng content_rng(derive_seed(config.seed, 0, 3));
    const auto content = Content::random(config.params.N, content_rng);
    std::vector<SweepRow> rows;
    for (auto A64 : config.A_values) {
        const auto A = static_cast<std::uint32_t>(A64);
        SweepRow row;
        row.A = A;
        row.P = A * config.params.m;
        row.formula_bits = bounds::simple_strategy_cost(config.sigma, static_cast<double>(config.params.N),
                                                        static_cast<double>(row.P),
                                                        static_cast<double>(config.params.L),
                                                        static_cast<double>(config.q_H));
        try {
            const auto bound = bounds::multi_bound(config.bound_inputs(A, config.sigma));
            row.bound_bits = bound.total;
            row.bound_dominant = bound.dominant_term;
            const auto result = run_strategy(config.strategy, config.experiment(A), content);
            row.strategy_bits = result.avg_bits;
            row.bits_se = result.bits_standard_error();
            row.success_rate = result.success_rate;
            double attempted = 0, fetched = 0;
            for (const auto& r : result.records)
                if (r.attempted) {
                    attempted += 1;
                    fetched += static_cast<double>(r.bits_total) / static_cast<double>(config.params.N);
                }
            row.members = attempted > 0 ? static_cast<std::uint64_t>(fetched / attempted + 0.5) : 0;
        } catch (const std::exception& e) {
            row.status = std::string("infeasible: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepSchema << '\n';
    out << "A,P,members,strategy_bits,formula_bits,bound_bits,bound_dominant,success_rate,status\n";
    char buf[512];
    for (const auto& r : rows) {
        std::string status = r.status;
        for (auto& ch : status)
            if (ch == ',' || ch == '\n') ch = ';';
        std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%.1f,%.1f,%.1f,%.1f,%.4f,%s\n",
                      static_cast<unsigned long long>(r.A), static_cast<unsigned long long>(r.P),
                      static_cast<unsigned long long>(r.members), r.strategy_bits, r.formula_bits, r.bound_bits,
                      r.bound_dominant, r.success_rate, status.c_str());
        out << buf;
    }
}

void write_sweep_summary(std::ostream& out, const SimulationConfig& c, const std::vector<SweepRow>& rows) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "strategy %s  params %s  V %llu  q_H %llu  delta %g  sigma %g  trials %llu\n",
                  to_string(c.strategy).c_str(), c.params.to_string().c_str(), static_cast<unsigned long long>(c.V),
                  static_cast<unsigned long long>(c.q_H), c.delta, c.sigma, static_cast<unsigned long long>(c.trials));
    out << buf;
    std::snprintf(buf, sizeof buf, "%6s %7s %14s %14s %14s %8s  %s\n", "A", "P", "strategy_bits", "formula_bits",
                  "bound_bits", "success", "status");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%6llu %7llu %14.1f %14.1f %14.1f %8.4f  %s\n",
                      static_cast<unsigned long long>(r.A), static_cast<unsigned long long>(r.P), r.strategy_bits,
                      r.formula_bits, r.bound_bits, r.success_rate, r.status.c_str());
        out << buf;
    }
}

}  // namespace bwpuzzle
