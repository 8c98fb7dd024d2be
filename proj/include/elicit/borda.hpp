#pragma once

// Borda scoring with complete and partial information.
//
// Scores follow the 1..m convention: a candidate with k candidates ranked
// below it scores k + 1. Possible and necessary winners are decided by
// per-pair score-difference bounds summed over voters. For possible
// winners that test is a relaxation: the returned set always contains the
// exact possible-winner set and may be strictly larger.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "prefs.hpp"

namespace elicit {

struct ScoreBounds {
    int sigma_min = 0;
    int sigma_max = 0;

    friend bool operator==(ScoreBounds, ScoreBounds) = default;
};

inline int borda_score(const LinearOrder& p, CandidateId c) {
    return static_cast<int>(p.size() - p.rank_of(c));
}

/// Total Borda scores per candidate.
inline std::vector<int> borda_totals(std::span<const LinearOrder> profile) {
    if (profile.empty()) return {};
    std::vector<int> totals(profile.front().size(), 0);
    for (const auto& p : profile) {
        if (p.size() != totals.size()) throw PreconditionViolation("profile mixes candidate counts");
        for (std::size_t c = 0; c < totals.size(); ++c) totals[c] += borda_score(p, candidate(c));
    }
    return totals;
}

/// Borda winner with ties broken towards the lowest candidate index.
inline CandidateId borda_winner(std::span<const LinearOrder> profile) {
    if (profile.empty()) throw PreconditionViolation("empty profile");
    auto totals = borda_totals(profile);
    std::size_t best = 0;
    for (std::size_t c = 1; c < totals.size(); ++c)
        if (totals[c] > totals[best]) best = c;
    return candidate(best);
}

inline ScoreBounds score_bounds(const PartialOrder& q, CandidateId c) {
    auto m = static_cast<int>(q.size());
    return {1 + static_cast<int>(q.below(c).size()), m - static_cast<int>(q.above(c).size())};
}

/// Largest sigma(c) - sigma(c2) over all linear extensions of q.
///
/// When c2 > c is committed, the best completion keeps only the candidates
/// forced between them in between. Otherwise c can be put directly above
/// every candidate that is neither committed above c nor below c2, and c2
/// directly below them.
inline int max_pair_diff(const PartialOrder& q, CandidateId c, CandidateId c2) {
    if (c == c2) throw PreconditionViolation("max_pair_diff needs two distinct candidates");
    if (q.prec(c2, c)) return -(1 + static_cast<int>((q.below(c2) & q.above(c)).size()));
    auto free = CandidateSet::all(q.size()) - q.above(c) - q.below(c2) - CandidateSet{c, c2};
    return 1 + static_cast<int>(free.size());
}

/// Smallest sigma(c) - sigma(c2) over all linear extensions of q.
inline int min_pair_diff(const PartialOrder& q, CandidateId c, CandidateId c2) {
    return -max_pair_diff(q, c2, c);
}

namespace detail {

/// c beats c2 on a summed score difference under the index tie-break.
inline bool beats(int diff, CandidateId c, CandidateId c2) {
    return index(c) < index(c2) ? diff >= 0 : diff > 0;
}

template <class PairBound>
bool wins_against_all(std::span<const PartialOrder> qs, CandidateId c, PairBound bound) {
    const std::size_t m = qs.front().size();
    for (std::size_t j = 0; j < m; ++j) {
        auto c2 = candidate(j);
        if (c2 == c) continue;
        int sum = 0;
        for (const auto& q : qs) sum += bound(q, c, c2);
        if (!beats(sum, c, c2)) return false;
    }
    return true;
}

} // namespace detail

/// Candidates that pass the pairwise possible-winner test: against every
/// rival, the summed best-case score difference is enough to win the tie-break.
inline CandidateSet possible_winners(std::span<const PartialOrder> qs) {
    if (qs.empty()) throw PreconditionViolation("no voters");
    CandidateSet pw;
    for (std::size_t i = 0; i < qs.front().size(); ++i)
        if (detail::wins_against_all(qs, candidate(i), max_pair_diff)) pw.insert(candidate(i));
    return pw;
}

/// The candidate that wins under every joint completion, if one is certain.
inline std::optional<CandidateId> necessary_winner(std::span<const PartialOrder> qs) {
    if (qs.empty()) throw PreconditionViolation("no voters");
    for (std::size_t i = 0; i < qs.front().size(); ++i)
        if (detail::wins_against_all(qs, candidate(i), min_pair_diff)) return candidate(i);
    return std::nullopt;
}

/// Possible winners together with each voter's ordering of them.
struct PossibleWinnerView {
    CandidateSet pw;
    std::vector<std::vector<CandidateId>> per_voter_order;
};

inline PossibleWinnerView make_view(CandidateSet pw, std::span<const LinearOrder> current) {
    PossibleWinnerView v{pw, {}};
    v.per_voter_order.reserve(current.size());
    for (const auto& p : current) v.per_voter_order.push_back(project(p, pw));
    return v;
}

} // namespace elicit
