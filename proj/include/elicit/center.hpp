#pragma once

// The voting center and the elicitation loop.
//
// Each round the center recomputes possible winners, stops once a necessary
// winner is certain, and otherwise asks one voter about one unresolved pair.
// Answers are closed transitively; an answer contradicting a voter's earlier
// ones raises InconsistencyError.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "borda.hpp"
#include "manipulation.hpp"
#include "prefs.hpp"
#include "voter.hpp"

namespace elicit {

enum class VoterId : std::uint32_t {};

constexpr std::size_t index(VoterId v) noexcept { return static_cast<std::size_t>(v); }
constexpr VoterId voter(std::size_t i) noexcept { return static_cast<VoterId>(i); }

/// Ask `voter` to compare cj and ck.
struct Query {
    VoterId voter;
    CandidateId cj;
    CandidateId ck;

    friend bool operator==(const Query&, const Query&) = default;
};

enum class Selector { es, random };

inline const char* to_string(Selector s) { return s == Selector::es ? "es" : "random"; }

struct Policy {
    Selector selector = Selector::es;
    bool careful = false;

    friend bool operator==(const Policy&, const Policy&) = default;
};

/// "ES", "Careful-RANDOM", ...
inline std::string policy_name(const Policy& p) {
    std::string base = p.selector == Selector::es ? "ES" : "RANDOM";
    return p.careful ? "Careful-" + base : base;
}

struct HistoryEntry {
    Query query;
    CandidateId preferred;
    CandidateId other;
    bool manipulated = false;
};

class CenterState {
public:
    CenterState(std::size_t voters, std::size_t candidates) : qs_(voters, PartialOrder(candidates)) {
        if (voters == 0) throw PreconditionViolation("need at least one voter");
        if (candidates < 2) throw PreconditionViolation("need at least two candidates");
        pw_ = possible_winners(qs_);
    }

    std::size_t voters() const { return qs_.size(); }
    std::size_t candidates() const { return qs_.front().size(); }
    std::span<const PartialOrder> qs() const { return qs_; }
    const PartialOrder& q(VoterId v) const { return qs_[index(v)]; }
    std::span<const HistoryEntry> history() const { return history_; }
    std::size_t round() const { return history_.size(); }
    CandidateSet pw() const { return pw_; }

    std::optional<CandidateId> necessary() const { return necessary_winner(qs_); }

    /// Incorporates `preferred > other` from the queried voter.
    void apply_response(const Query& query, CandidateId preferred, CandidateId other, bool manipulated = false) {
        auto& q = qs_.at(index(query.voter));
        bool same_pair = (preferred == query.cj && other == query.ck) || (preferred == query.ck && other == query.cj);
        if (!same_pair) throw PreconditionViolation("response does not answer the query");
        if (q.comparable(query.cj, query.ck)) {
            if (q.prec(preferred, other)) throw PreconditionViolation("query was already resolved");
            throw InconsistencyError("response contradicts the voter's earlier answers");
        }
        q.add(preferred, other);
        history_.push_back({query, preferred, other, manipulated});
        pw_ = possible_winners(qs_);
    }

private:
    std::vector<PartialOrder> qs_;
    std::vector<HistoryEntry> history_;
    CandidateSet pw_;
};

/// Every (voter, pair) the center cannot infer yet, with cj < ck by index.
inline std::vector<Query> unresolved(const CenterState& state) {
    std::vector<Query> out;
    const std::size_t m = state.candidates();
    for (std::size_t v = 0; v < state.voters(); ++v) {
        const auto& q = state.q(voter(v));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                if (!q.comparable(candidate(a), candidate(b))) out.push_back({voter(v), candidate(a), candidate(b)});
    }
    return out;
}

/// Both candidates of the query are possible winners.
inline bool is_safe(const Query& query, CandidateSet pw) { return pw.contains(query.cj) && pw.contains(query.ck); }

/// Candidate with the largest summed midpoint of its score bounds; lowest
/// index on ties.
inline CandidateId expected_score_leader(std::span<const PartialOrder> qs) {
    const std::size_t m = qs.front().size();
    std::size_t best = 0;
    int best_sum = -1;
    for (std::size_t c = 0; c < m; ++c) {
        int twice_mid = 0;
        for (const auto& q : qs) {
            auto b = score_bounds(q, candidate(c));
            twice_mid += b.sigma_min + b.sigma_max;
        }
        if (twice_mid > best_sum) {
            best_sum = twice_mid;
            best = c;
        }
    }
    return candidate(best);
}

template <class Rng>
Query select_query(const CenterState& state, const Policy& policy, Rng& rng) {
    auto pool = unresolved(state);
    if (pool.empty()) throw NoQueriesLeft("every pair is already resolved");

    if (policy.selector == Selector::es) {
        auto leader = expected_score_leader(state.qs());
        std::vector<Query> touching;
        for (const auto& q : pool)
            if (q.cj == leader || q.ck == leader) touching.push_back(q);
        if (!touching.empty()) pool = std::move(touching);
    }
    if (policy.careful) {
        std::vector<Query> safe;
        for (const auto& q : pool)
            if (is_safe(q, state.pw())) safe.push_back(q);
        if (!safe.empty()) pool = std::move(safe);
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

struct TraceStep {
    Query query;
    CandidateId preferred;
    CandidateId other;
    bool manipulated = false;
    bool safe = false;
    CandidateSet pw;
};

struct ElectionResult {
    CandidateId winner{};
    std::size_t queries = 0;
    std::size_t max_queries = 0;
    std::size_t manipulated = 0;
    std::vector<TraceStep> trace;
};

struct RunOptions {
    /// Check after every answer that each voter orders the possible winners
    /// as its true order does, and that the inter-winner segments of its
    /// current order never shrink relative to the truth and strictly grow
    /// on every manipulation. Violations throw InvariantViolation.
    bool check_invariants = false;
    bool keep_trace = true;
};

namespace detail {

inline void check_voter_invariants(const VoterState& vs, CandidateSet pw, std::size_t round) {
    auto truth = project(vs.p_true(), pw);
    auto now = project(vs.p_current(), pw);
    if (truth != now)
        throw InvariantViolation("round " + std::to_string(round) + ": possible winners reordered by a voter");
    if (segment_total(vs.p_current(), truth) < segment_total(vs.p_true(), truth))
        throw InvariantViolation("round " + std::to_string(round) + ": inter-winner segments shrank");
}

} // namespace detail

/// Runs one election to termination. `profiles` are the voters' true orders.
template <class Rng>
ElectionResult run_election(std::span<const LinearOrder> profiles, Behavior behavior, const Policy& policy, Rng& rng,
                            const RunOptions& options = {}) {
    if (profiles.empty()) throw PreconditionViolation("need at least one voter");
    const std::size_t m = profiles.front().size();
    CenterState center(profiles.size(), m);
    std::vector<VoterState> voters;
    voters.reserve(profiles.size());
    for (const auto& p : profiles) {
        if (p.size() != m) throw PreconditionViolation("profiles mix candidate counts");
        voters.emplace_back(p);
    }

    ElectionResult result;
    result.max_queries = profiles.size() * m * (m - 1) / 2;
    while (true) {
        if (auto nw = center.necessary()) {
            result.winner = *nw;
            break;
        }
        auto query = select_query(center, policy, rng);
        auto pw = center.pw();
        auto& vs = voters[index(query.voter)];
        const auto before = vs.p_current();
        auto ans = vs.respond(query.cj, query.ck, pw, behavior);
        center.apply_response(query, ans.preferred, ans.other, ans.manipulated);

        ++result.queries;
        if (ans.manipulated) ++result.manipulated;
        if (options.keep_trace)
            result.trace.push_back({query, ans.preferred, ans.other, ans.manipulated, is_safe(query, pw), pw});

        if (options.check_invariants) {
            if (ans.manipulated) {
                auto order = project(before, pw);
                if (segment_total(vs.p_current(), order) <= segment_total(before, order))
                    throw InvariantViolation("manipulation without segment growth");
                if (is_safe(query, pw)) throw InvariantViolation("safe query was manipulated");
            }
            for (const auto& v : voters) {
                detail::check_voter_invariants(v, pw, center.round());
                detail::check_voter_invariants(v, center.pw(), center.round());
            }
        }
        if (result.queries > result.max_queries) throw InvariantViolation("election exceeded the query budget");
    }
    return result;
}

} // namespace elicit
