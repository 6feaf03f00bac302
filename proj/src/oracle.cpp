#include "bwpuzzle/oracle.hpp"

#include <algorithm>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

void OmegaConfig::validate(std::uint64_t n) const {
    if (V == 0 || V >= n) throw ConfigError("V must satisfy 0 < V < n");
    if (L == 0) throw ConfigError("L must be positive");
    if (q_H < L) throw ConfigError("q_H must be at least L");
}

OracleStats::OracleStats(std::uint32_t adversaries, std::uint64_t N) : N_(N), per_(adversaries) {
    if (adversaries == 0) throw ConfigError("at least one adversary required");
    for (auto& p : per_) p.seen.assign(N, false);
}

OracleStats::PerAdversary& OracleStats::at(AdversaryId v) {
    if (v.value >= per_.size()) throw DomainError("adversary id out of range");
    return per_[v.value];
}

const OracleStats::PerAdversary& OracleStats::at(AdversaryId v) const {
    if (v.value >= per_.size()) throw DomainError("adversary id out of range");
    return per_[v.value];
}

bool OracleStats::record_content(AdversaryId v, std::uint64_t i) {
    if (i >= N_) throw DomainError("content index out of range");
    auto& p = at(v);
    if (p.seen[i]) return false;
    p.seen[i] = true;
    p.unique++;
    return true;
}

void OracleStats::record_all_content(AdversaryId v) {
    auto& p = at(v);
    std::fill(p.seen.begin(), p.seen.end(), true);
    p.unique = N_;
}

bool OracleStats::has_index(AdversaryId v, std::uint64_t i) const {
    if (i >= N_) throw DomainError("content index out of range");
    return at(v).seen[i];
}

std::uint64_t OracleStats::total_content_bits() const {
    std::uint64_t t = 0;
    for (const auto& p : per_) t += p.unique;
    return t;
}

std::uint64_t OracleStats::total_hash_queries() const {
    std::uint64_t t = 0;
    for (const auto& p : per_) t += p.hash;
    return t;
}

void OracleStats::write_csv(std::ostream& out) const {
    out << "adversary_id,content_bits,hash_queries,puzzles_confirmed\n";
    for (std::size_t v = 0; v < per_.size(); ++v)
        out << v << ',' << per_[v].unique << ',' << per_[v].hash << ',' << per_[v].confirmed << '\n';
}

QueryClass classify_query(const OracleStats& stats, AdversaryId v, const IndexSet& iset, std::uint64_t V) {
    std::vector<std::uint64_t> missing;
    for (auto i : iset.indices)
        if (!stats.has_index(v, i)) missing.push_back(i);
    if (missing.size() <= V) return QueryClass::informed;
    std::sort(missing.begin(), missing.end());
    auto distinct = static_cast<std::uint64_t>(std::unique(missing.begin(), missing.end()) - missing.begin());
    return distinct <= V ? QueryClass::informed : QueryClass::uninformed;
}

OmegaEnv::OmegaEnv(const Content& content, OmegaConfig config, std::uint32_t adversaries, const Primitives& prims)
    : content_(content), config_(config), prims_(prims), stats_(adversaries, content.size()) {}

OmegaEnv::PuzzleId OmegaEnv::add_puzzle(const Puzzle& puzzle) {
    if (puzzle.params.N != content_.size()) throw ConfigError("puzzle N does not match content");
    if (puzzle.params.L != config_.L) throw ConfigError("puzzle L does not match oracle configuration");
    config_.validate(puzzle.params.n);
    std::lock_guard lock(mu_);
    puzzles_.push_back({puzzle, 0, std::vector<bool>(stats_.adversaries(), false)});
    return puzzles_.size() - 1;
}

bool OmegaEnv::content_query(AdversaryId v, std::uint64_t i) {
    std::lock_guard lock(mu_);
    stats_.record_content(v, i);
    return content_.get(i);
}

void OmegaEnv::grant_full_content(AdversaryId v) {
    std::lock_guard lock(mu_);
    stats_.record_all_content(v);
}

QueryClass OmegaEnv::classify(AdversaryId v, const IndexSet& iset) const {
    std::lock_guard lock(mu_);
    return classify_query(stats_, v, iset, config_.V);
}

HashReply OmegaEnv::hash_query(AdversaryId v, PuzzleId p, std::uint64_t j) {
    std::lock_guard lock(mu_);
    if (p >= puzzles_.size()) throw DomainError("unknown puzzle");
    auto& st = puzzles_[p];
    if (j < 1 || j > st.puzzle.params.L) throw DomainError("index-set ordinal out of range");

    HashReply reply;
    if (auto it = memo_.find({v.value, p, j}); it != memo_.end()) {
        reply.status = ReplyStatus::answered;
        reply.digest = it->second;
        reply.confirm = it->second == st.puzzle.hint;
        return reply;
    }
    if (stats_.hash_queries(v) >= config_.q_H) {
        reply.status = ReplyStatus::budget_exhausted;
        return reply;
    }
    stats_.charge_hash(v);
    reply.charged = true;
    if (++st.queries > config_.L) {
        reply.status = ReplyStatus::puzzle_cap;
        return reply;
    }
    const auto iset = index_set(st.puzzle.params, st.puzzle.k1, j, prims_);
    if (classify_query(stats_, v, iset, config_.V) == QueryClass::uninformed) {
        reply.status = ReplyStatus::uninformed;
        return reply;
    }
    auto digest = prims_.hash_h(st.puzzle.k1, j, true_string(content_, iset), st.puzzle.params);
    reply.status = ReplyStatus::answered;
    reply.confirm = digest == st.puzzle.hint;
    if (reply.confirm && !st.confirmed_by[v.value]) {
        st.confirmed_by[v.value] = true;
        stats_.record_confirm(v);
    }
    memo_.emplace(std::tuple{v.value, std::uint64_t{p}, j}, digest);
    reply.digest = std::move(digest);
    return reply;
}

std::uint64_t OmegaEnv::remaining_budget(AdversaryId v) const {
    std::lock_guard lock(mu_);
    auto used = stats_.hash_queries(v);
    return used >= config_.q_H ? 0 : config_.q_H - used;
}

std::uint64_t OmegaEnv::puzzle_queries(PuzzleId p) const {
    std::lock_guard lock(mu_);
    if (p >= puzzles_.size()) throw DomainError("unknown puzzle");
    return puzzles_[p].queries;
}

OracleStats OmegaEnv::stats() const {
    std::lock_guard lock(mu_);
    return stats_;
}

}  // namespace bwpuzzle
