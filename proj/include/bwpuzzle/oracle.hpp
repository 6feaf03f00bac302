#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <tuple>
#include <vector>

#include "bwpuzzle/puzzle.hpp"

namespace bwpuzzle {

struct AdversaryId {
    std::uint32_t value = 0;
    friend auto operator<=>(const AdversaryId&, const AdversaryId&) = default;
};

struct OmegaConfig {
    std::uint64_t V = 60;    ///< informedness slack, bits
    std::uint64_t q_H = 0;   ///< per-adversary hash budget
    std::uint64_t L = 0;     ///< index sets per puzzle; also the per-puzzle query cap

    /// 0 < V < n and q_H >= L.
    void validate(std::uint64_t n) const;
};

enum class QueryClass { informed, uninformed };

enum class ReplyStatus {
    answered,          ///< digest returned
    uninformed,        ///< more than V distinct indices unknown to the asker
    budget_exhausted,  ///< asker already spent q_H queries
    puzzle_cap,        ///< L queries already made for this puzzle
};

struct HashReply {
    ReplyStatus status = ReplyStatus::uninformed;
    std::optional<Digest> digest;
    bool confirm = false;  ///< digest equals the puzzle hint
    bool charged = false;  ///< counted against the asker's budget

    bool answered() const { return status == ReplyStatus::answered; }
};

/// Per-adversary accounting. Content bits are unique indices queried; all
/// counters only grow.
class OracleStats {
public:
    OracleStats(std::uint32_t adversaries, std::uint64_t N);

    std::uint32_t adversaries() const { return static_cast<std::uint32_t>(per_.size()); }
    std::uint64_t content_size() const { return N_; }

    /// Records a content query; true if the index is new for v.
    bool record_content(AdversaryId v, std::uint64_t i);
    void record_all_content(AdversaryId v);
    bool has_index(AdversaryId v, std::uint64_t i) const;

    std::uint64_t content_bits(AdversaryId v) const { return at(v).unique; }
    std::uint64_t hash_queries(AdversaryId v) const { return at(v).hash; }
    std::uint64_t puzzles_confirmed(AdversaryId v) const { return at(v).confirmed; }

    std::uint64_t total_content_bits() const;
    std::uint64_t total_hash_queries() const;

    void charge_hash(AdversaryId v) { at(v).hash++; }
    void record_confirm(AdversaryId v) { at(v).confirmed++; }

    /// adversary_id,content_bits,hash_queries,puzzles_confirmed
    void write_csv(std::ostream& out) const;

private:
    struct PerAdversary {
        std::vector<bool> seen;
        std::uint64_t unique = 0;
        std::uint64_t hash = 0;
        std::uint64_t confirmed = 0;
    };
    PerAdversary& at(AdversaryId v);
    const PerAdversary& at(AdversaryId v) const;

    std::uint64_t N_;
    std::vector<PerAdversary> per_;
};

/// Informed iff at most V distinct indices of `iset` are unknown to v.
QueryClass classify_query(const OracleStats& stats, AdversaryId v, const IndexSet& iset, std::uint64_t V);

/// The special oracle: answers content queries always and hash queries only
/// when informed, within budget, and under the per-puzzle cap. Refused
/// queries other than budget exhaustion still cost one unit of budget.
/// Every public member locks; concurrent callers are serialized.
class OmegaEnv {
public:
    using PuzzleId = std::size_t;

    OmegaEnv(const Content& content, OmegaConfig config, std::uint32_t adversaries,
             const Primitives& prims = Primitives::standard());

    PuzzleId add_puzzle(const Puzzle& puzzle);

    bool content_query(AdversaryId v, std::uint64_t i);
    /// Same accounting as querying every index once.
    void grant_full_content(AdversaryId v);

    QueryClass classify(AdversaryId v, const IndexSet& iset) const;
    HashReply hash_query(AdversaryId v, PuzzleId p, std::uint64_t j);

    std::uint64_t remaining_budget(AdversaryId v) const;
    std::uint64_t puzzle_queries(PuzzleId p) const;
    const OmegaConfig& config() const { return config_; }

    /// Snapshot of the counters.
    OracleStats stats() const;

private:
    const Content& content_;
    OmegaConfig config_;
    const Primitives& prims_;
    mutable std::mutex mu_;
    OracleStats stats_;
    struct PuzzleState {
        Puzzle puzzle;
        std::uint64_t queries = 0;
        std::vector<bool> confirmed_by;  // per adversary
    };
    std::vector<PuzzleState> puzzles_;
    std::map<std::tuple<std::uint32_t, std::uint64_t, std::uint64_t>, Digest> memo_;  // answered queries
};

}  // namespace bwpuzzle
