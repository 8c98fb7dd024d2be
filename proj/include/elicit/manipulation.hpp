#pragma once

// Voter-side strategic engine.
//
// A voter asked about (cj, ck) whose current order ranks cj > ck may answer
// ck > cj instead, adopting a new order that is consistent with everything
// it has said so far plus the flipped answer. It does so only if some order
// at minimal swap distance from its current one locally dominates it.
//
// Local dominance is tested through its order characterization: the
// possible winners keep their relative order, no segment between two
// consecutive possible winners shrinks and at least one grows.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "prefs.hpp"

namespace elicit {

struct ManipulationOutcome {
    bool changed = false;
    LinearOrder new_order;
    std::size_t distance = 0;
};

/// Possible winners, most preferred by p first.
inline std::vector<CandidateId> order_pw(const LinearOrder& p, CandidateSet pw) {
    if (pw.empty()) throw PreconditionViolation("empty possible-winner set");
    return project(p, pw);
}

/// Sum over consecutive possible winners of the inclusive segment size in p.
inline std::size_t segment_total(const LinearOrder& p, std::span<const CandidateId> pw_ordered) {
    std::size_t total = 0;
    for (std::size_t a = 0; a + 1 < pw_ordered.size(); ++a)
        total += p.rank_of(pw_ordered[a + 1]) - p.rank_of(pw_ordered[a]) + 1;
    return total;
}

/// p2 locally dominates p, given the possible winners ordered by p.
inline bool is_locally_dominant(const LinearOrder& p2, const LinearOrder& p, std::span<const CandidateId> pw_ordered) {
    bool grew = false;
    for (std::size_t a = 0; a + 1 < pw_ordered.size(); ++a) {
        auto hi = pw_ordered[a];
        auto lo = pw_ordered[a + 1];
        if (!p2.prefers(hi, lo)) return false;
        auto before = p.rank_of(lo) - p.rank_of(hi);
        auto after = p2.rank_of(lo) - p2.rank_of(hi);
        if (after < before) return false;
        grew = grew || after > before;
    }
    return grew;
}

/// Necessary positional condition for a locally dominant minimal flip of
/// (cj, ck): the pair has to straddle an end of the possible-winner segment.
inline bool precheck(const LinearOrder& p, std::span<const CandidateId> pw_ordered, CandidateId cj, CandidateId ck) {
    if (pw_ordered.empty()) throw PreconditionViolation("empty possible-winner set");
    auto first = p.rank_of(pw_ordered.front());
    auto last = p.rank_of(pw_ordered.back());
    auto rj = p.rank_of(cj);
    auto rk = p.rank_of(ck);
    bool j_above = rj < first;
    bool k_below = rk > last;
    bool j_inside = rj >= first && rj <= last;
    bool k_inside = rk >= first && rk <= last;
    return (j_above && k_below) || (j_above && k_inside) || (k_below && j_inside);
}

namespace detail {

/// The order X_good, Y_bad, ck, cj, X_bad, Y_good for pivot z. Everything
/// ranked above z stays above ck unless committed below cj; everything from
/// z down stays below cj unless committed above ck.
inline LinearOrder flip_candidate(const LinearOrder& p, const PartialOrder& q, CandidateId cj, CandidateId ck,
                                  CandidateId z) {
    const auto pivot = p.rank_of(z);
    const CandidateSet ends{cj, ck};
    const CandidateSet above_z = p.prefix(pivot) - ends;
    const CandidateSet from_z = CandidateSet::all(p.size()) - p.prefix(pivot) - ends;

    const CandidateSet x_good = above_z - interval_q(q, Side::below, cj, true);
    const CandidateSet x_bad = above_z & interval_q(q, Side::below, cj, false);
    const CandidateSet y_good = from_z - interval_q(q, Side::above, ck, true);
    const CandidateSet y_bad = from_z & interval_q(q, Side::above, ck, false);

    std::vector<CandidateId> r;
    r.reserve(p.size());
    auto append = [&](CandidateSet s) {
        for (auto c : project(p, s)) r.push_back(c);
    };
    append(x_good);
    append(y_bad);
    r.push_back(ck);
    r.push_back(cj);
    append(x_bad);
    append(y_good);
    return LinearOrder(std::move(r));
}

} // namespace detail

/// Minimal-swap-distance locally dominant manipulation for the query
/// (cj, ck), where p currently ranks cj > ck and q is the voter's revealed
/// closure. Returns p unchanged when no such manipulation exists.
inline ManipulationOutcome find_manipulation(const LinearOrder& p, const PartialOrder& q, CandidateSet pw,
                                             CandidateId cj, CandidateId ck) {
    if (cj == ck) throw PreconditionViolation("query needs two distinct candidates");
    if (q.comparable(cj, ck)) throw PreconditionViolation("queried pair is already committed");
    if (!p.prefers(cj, ck)) throw PreconditionViolation("current order must rank cj above ck");

    const ManipulationOutcome unchanged{false, p, 0};
    const auto pw_ordered = order_pw(p, pw);
    if (!precheck(p, pw_ordered, cj, ck)) return unchanged;

    constexpr auto kInf = std::numeric_limits<std::size_t>::max();
    std::size_t d_abs = kInf;
    std::size_t d_loc = kInf;
    std::optional<LinearOrder> best;

    // Pivot runs from ck up to cj.
    for (auto pos = p.rank_of(ck) + 1; pos-- > p.rank_of(cj);) {
        auto flipped = detail::flip_candidate(p, q, cj, ck, p.at(pos));
        auto d = swap_distance(p, flipped);
        if (d < d_abs) d_abs = d;
        if (d < d_loc && is_locally_dominant(flipped, p, pw_ordered)) {
            d_loc = d;
            best = std::move(flipped);
        }
    }
    if (!best || d_abs < d_loc) return unchanged;
    return {true, std::move(*best), d_loc};
}

} // namespace elicit
