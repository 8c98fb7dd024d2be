#pragma once

// Brute-force references used to check the production algorithms on small
// instances. Everything here enumerates linear extensions explicitly.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "borda.hpp"
#include "manipulation.hpp"
#include "prefs.hpp"

namespace elicit::oracle {

inline constexpr std::size_t kDefaultCap = 8;

struct ExtensionSet {
    std::vector<LinearOrder> extensions;
};

/// Every linear extension of q, built by repeatedly choosing a candidate
/// with nothing uncommitted above it.
inline ExtensionSet enumerate_extensions(const PartialOrder& q, std::size_t cap = kDefaultCap) {
    const std::size_t m = q.size();
    if (m > cap) throw CapExceeded("enumeration capped at " + std::to_string(cap) + " candidates");
    ExtensionSet out;
    std::vector<CandidateId> prefix;
    prefix.reserve(m);
    std::function<void(CandidateSet)> rec = [&](CandidateSet placed) {
        if (prefix.size() == m) {
            out.extensions.emplace_back(prefix);
            return;
        }
        for (std::size_t i = 0; i < m; ++i) {
            auto c = candidate(i);
            if (placed.contains(c) || !q.above(c).subset_of(placed)) continue;
            prefix.push_back(c);
            auto next = placed;
            next.insert(c);
            rec(next);
            prefix.pop_back();
        }
    };
    rec(CandidateSet{});
    return out;
}

/// Extensions of CL(q + (ck > cj)) at minimal swap distance from p.
inline std::vector<LinearOrder> mu_set(const LinearOrder& p, const PartialOrder& q, CandidateId ck, CandidateId cj,
                                       std::size_t cap = kDefaultCap) {
    auto forced = add_preference(q, ck, cj);
    auto ext = enumerate_extensions(forced, cap);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<LinearOrder> mu;
    for (auto& e : ext.extensions) {
        auto d = swap_distance(p, e);
        if (d < best) {
            best = d;
            mu.clear();
        }
        if (d == best) mu.push_back(std::move(e));
    }
    return mu;
}

/// Reference manipulation: scan mu for any locally dominant member.
inline ManipulationOutcome oracle_manipulation(const LinearOrder& p, const PartialOrder& q, CandidateSet pw,
                                               CandidateId cj, CandidateId ck, std::size_t cap = kDefaultCap) {
    if (q.comparable(cj, ck)) throw PreconditionViolation("queried pair is already committed");
    if (!p.prefers(cj, ck)) throw PreconditionViolation("current order must rank cj above ck");
    const auto pw_ordered = order_pw(p, pw);
    for (auto& candidate_order : mu_set(p, q, ck, cj, cap)) {
        if (is_locally_dominant(candidate_order, p, pw_ordered)) {
            auto d = swap_distance(p, candidate_order);
            return {true, std::move(candidate_order), d};
        }
    }
    return {false, p, 0};
}

namespace detail {

template <class F>
void for_each_joint_extension(std::span<const ExtensionSet> per_voter, F&& f) {
    std::vector<LinearOrder> profile(per_voter.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == per_voter.size()) {
            f(std::span<const LinearOrder>(profile));
            return;
        }
        for (const auto& e : per_voter[i].extensions) {
            profile[i] = e;
            rec(i + 1);
        }
    };
    rec(0);
}

inline std::vector<ExtensionSet> extensions_of(std::span<const PartialOrder> qs, std::size_t cap) {
    std::vector<ExtensionSet> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(enumerate_extensions(q, cap));
    return out;
}

} // namespace detail

/// Exact possible winners: candidates that win some joint completion.
inline CandidateSet exact_possible_winners(std::span<const PartialOrder> qs, std::size_t cap = kDefaultCap) {
    auto ext = detail::extensions_of(qs, cap);
    CandidateSet pw;
    detail::for_each_joint_extension(std::span<const ExtensionSet>(ext),
                                     [&](std::span<const LinearOrder> profile) { pw.insert(borda_winner(profile)); });
    return pw;
}

/// Exact necessary winner: the candidate winning every joint completion.
inline std::optional<CandidateId> exact_necessary_winner(std::span<const PartialOrder> qs,
                                                         std::size_t cap = kDefaultCap) {
    auto pw = exact_possible_winners(qs, cap);
    if (pw.size() == 1) return pw.lowest();
    return std::nullopt;
}

/// Extremes of sigma(c) - sigma(c2) over the linear extensions of q.
struct DiffRange {
    int min = 0;
    int max = 0;
};

inline DiffRange pair_diff_range(const PartialOrder& q, CandidateId c, CandidateId c2,
                                 std::size_t cap = kDefaultCap) {
    DiffRange r{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
    for (const auto& e : enumerate_extensions(q, cap).extensions) {
        int d = borda_score(e, c) - borda_score(e, c2);
        r.min = std::min(r.min, d);
        r.max = std::max(r.max, d);
    }
    return r;
}

/// A manipulation query in the canonical form: p ranks cj > ck and the
/// pair is uncommitted in q, which p extends.
struct Instance {
    LinearOrder p;
    PartialOrder q;
    CandidateSet pw;
    CandidateId cj{};
    CandidateId ck{};
};

inline std::ostream& operator<<(std::ostream& os, const Instance& in) {
    os << "p=" << in.p << " q={";
    bool first = true;
    for (auto [a, b] : in.q.pairs()) {
        os << (first ? "" : ",") << '(' << a << ',' << b << ')';
        first = false;
    }
    return os << "} pw=" << in.pw << " query=(" << in.cj << ',' << in.ck << ')';
}

/// Random instance over m candidates: a uniform order, a random sample of
/// its pairs closed into q, a random nonempty winner set and a random
/// uncommitted pair. Retries until q leaves some pair open.
template <class Rng>
Instance random_instance(std::size_t m, Rng& rng) {
    if (m < 2) throw PreconditionViolation("need at least two candidates");
    std::uniform_real_distribution<double> density(0.0, 0.6);
    std::uniform_int_distribution<CandidateSet::Mask> mask(1, CandidateSet::all(m).bits());
    while (true) {
        std::vector<CandidateId> r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = candidate(i);
        std::shuffle(r.begin(), r.end(), rng);
        LinearOrder p(std::move(r));
        PartialOrder q(m);
        std::bernoulli_distribution keep(density(rng));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (keep(rng)) q.add(p.at(i), p.at(j));
        std::vector<Pair> open;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (!q.comparable(p.at(i), p.at(j))) open.emplace_back(p.at(i), p.at(j));
        if (open.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        auto [cj, ck] = open[pick(rng)];
        return {std::move(p), std::move(q), CandidateSet(mask(rng)), cj, ck};
    }
}

} // namespace elicit::oracle
