#pragma once

// Preference representations: candidates, candidate sets, total orders and
// transitively closed partial orders, plus the interval/projection helpers
// the manipulation engine is written in terms of.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace elicit {

/// Dense candidate index in [0, m). Ascending index order is the a-priori
/// tie-break order.
enum class CandidateId : std::uint32_t {};

constexpr std::size_t index(CandidateId c) noexcept { return static_cast<std::size_t>(c); }
constexpr CandidateId candidate(std::size_t i) noexcept { return static_cast<CandidateId>(i); }

inline std::ostream& operator<<(std::ostream& os, CandidateId c) { return os << index(c); }

inline constexpr std::size_t kMaxCandidates = 32;

/// A set of candidates stored as a bitmask.
class CandidateSet {
public:
    using Mask = std::uint32_t;

    constexpr CandidateSet() = default;
    constexpr explicit CandidateSet(Mask bits) : bits_(bits) {}
    CandidateSet(std::initializer_list<CandidateId> cs) {
        for (auto c : cs) insert(c);
    }

    static constexpr CandidateSet all(std::size_t m) {
        return CandidateSet(m >= 32 ? ~Mask{0} : ((Mask{1} << m) - 1));
    }
    static constexpr CandidateSet single(CandidateId c) { return CandidateSet(Mask{1} << index(c)); }

    constexpr bool contains(CandidateId c) const { return (bits_ >> index(c)) & 1U; }
    constexpr void insert(CandidateId c) { bits_ |= Mask{1} << index(c); }
    constexpr void erase(CandidateId c) { bits_ &= ~(Mask{1} << index(c)); }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr Mask bits() const { return bits_; }

    constexpr bool subset_of(CandidateSet o) const { return (bits_ & ~o.bits_) == 0; }

    friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) { return CandidateSet(a.bits_ | b.bits_); }
    friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) { return CandidateSet(a.bits_ & b.bits_); }
    /// Set difference.
    friend constexpr CandidateSet operator-(CandidateSet a, CandidateSet b) { return CandidateSet(a.bits_ & ~b.bits_); }
    constexpr CandidateSet& operator|=(CandidateSet o) { bits_ |= o.bits_; return *this; }
    constexpr CandidateSet& operator&=(CandidateSet o) { bits_ &= o.bits_; return *this; }
    friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

    /// Members in ascending index order.
    std::vector<CandidateId> members() const {
        std::vector<CandidateId> out;
        out.reserve(size());
        for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(candidate(static_cast<std::size_t>(std::countr_zero(b))));
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (Mask b = bits_; b != 0; b &= b - 1) f(candidate(static_cast<std::size_t>(std::countr_zero(b))));
    }

    std::optional<CandidateId> lowest() const {
        if (bits_ == 0) return std::nullopt;
        return candidate(static_cast<std::size_t>(std::countr_zero(bits_)));
    }

private:
    Mask bits_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, CandidateSet s) {
    os << '{';
    bool first = true;
    s.for_each([&](CandidateId c) {
        if (!first) os << ',';
        os << c;
        first = false;
    });
    return os << '}';
}

/// A strict total ranking of all m candidates; position 0 is most preferred.
class LinearOrder {
public:
    LinearOrder() = default;

    explicit LinearOrder(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
        if (ranking_.size() > kMaxCandidates) throw PreconditionViolation("too many candidates");
        rank_.assign(ranking_.size(), kUnset);
        for (std::size_t p = 0; p < ranking_.size(); ++p) {
            auto c = index(ranking_[p]);
            if (c >= ranking_.size() || rank_[c] != kUnset)
                throw PreconditionViolation("ranking is not a permutation of 0..m-1");
            rank_[c] = static_cast<std::uint8_t>(p);
        }
    }

    LinearOrder(std::initializer_list<std::size_t> ranking) : LinearOrder(from_indices(ranking)) {}

    static LinearOrder from_indices(std::span<const std::size_t> idx) {
        std::vector<CandidateId> r;
        r.reserve(idx.size());
        for (auto i : idx) r.push_back(candidate(i));
        return LinearOrder(std::move(r));
    }
    static LinearOrder from_indices(std::initializer_list<std::size_t> idx) {
        return from_indices(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    /// Ascending index order 0 > 1 > ... > m-1.
    static LinearOrder identity(std::size_t m) {
        std::vector<CandidateId> r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = candidate(i);
        return LinearOrder(std::move(r));
    }

    std::size_t size() const { return ranking_.size(); }
    std::span<const CandidateId> ranking() const { return ranking_; }
    CandidateId at(std::size_t position) const { return ranking_[position]; }
    std::size_t rank_of(CandidateId c) const { return rank_[index(c)]; }
    CandidateId top() const { return ranking_.front(); }

    bool prefers(CandidateId a, CandidateId b) const { return rank_[index(a)] < rank_[index(b)]; }

    /// Candidates ranked strictly above c.
    CandidateSet above(CandidateId c) const { return prefix(rank_of(c)); }
    /// Candidates at positions [0, count).
    CandidateSet prefix(std::size_t count) const {
        CandidateSet s;
        for (std::size_t p = 0; p < count; ++p) s.insert(ranking_[p]);
        return s;
    }

    friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.ranking_ == b.ranking_; }
    friend bool operator<(const LinearOrder& a, const LinearOrder& b) { return a.ranking_ < b.ranking_; }

private:
    static constexpr std::uint8_t kUnset = 0xff;
    std::vector<CandidateId> ranking_;
    std::vector<std::uint8_t> rank_;
};

inline std::ostream& operator<<(std::ostream& os, const LinearOrder& p) {
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p.at(i);
    return os << ']';
}

/// Transitively closed strict partial order over m candidates.
///
/// Stored as a dense relation, one bit row per candidate in each direction:
/// `below(a)` holds every b with a > b committed, `above(b)` the transpose.
/// Closure is maintained on every insertion, and an insertion that would
/// create a cycle is rejected before anything is modified.
class PartialOrder {
public:
    PartialOrder() = default;
    explicit PartialOrder(std::size_t m) : m_(m), above_(m), below_(m) {
        if (m > kMaxCandidates) throw PreconditionViolation("too many candidates");
    }

    std::size_t size() const { return m_; }

    /// True iff a > b is committed.
    bool prec(CandidateId a, CandidateId b) const { return below_[index(a)].contains(b); }
    bool comparable(CandidateId a, CandidateId b) const { return prec(a, b) || prec(b, a); }

    CandidateSet above(CandidateId c) const { return above_[index(c)]; }
    CandidateSet below(CandidateId c) const { return below_[index(c)]; }

    /// Commits a > b and everything it implies by transitivity.
    void add(CandidateId a, CandidateId b) {
        if (index(a) >= m_ || index(b) >= m_) throw PreconditionViolation("candidate out of range");
        if (a == b) throw InconsistencyError("a candidate cannot be preferred to itself");
        if (prec(b, a)) throw InconsistencyError("preference contradicts earlier commitments");
        if (prec(a, b)) return;
        CandidateSet upper = above(a) | CandidateSet::single(a);
        CandidateSet lower = below(b) | CandidateSet::single(b);
        upper.for_each([&](CandidateId u) { below_[index(u)] |= lower; });
        lower.for_each([&](CandidateId l) { above_[index(l)] |= upper; });
    }

    std::size_t pair_count() const {
        std::size_t n = 0;
        for (auto s : below_) n += s.size();
        return n;
    }

    /// All committed pairs (a, b) with a > b, ordered by a then b.
    std::vector<std::pair<CandidateId, CandidateId>> pairs() const {
        std::vector<std::pair<CandidateId, CandidateId>> out;
        for (std::size_t a = 0; a < m_; ++a)
            below_[a].for_each([&](CandidateId b) { out.emplace_back(candidate(a), b); });
        return out;
    }

    /// True iff every pair of candidates is committed one way or the other.
    bool complete() const { return pair_count() == m_ * (m_ - (m_ > 0 ? 1 : 0)) / 2; }

    friend bool operator==(const PartialOrder& a, const PartialOrder& b) {
        return a.m_ == b.m_ && a.below_ == b.below_;
    }

private:
    std::size_t m_ = 0;
    std::vector<CandidateSet> above_;
    std::vector<CandidateSet> below_;
};

using Pair = std::pair<CandidateId, CandidateId>;

/// Transitive closure of a set of raw comparisons. Throws InconsistencyError
/// when the closure contains a cycle.
inline PartialOrder close(std::span<const Pair> raw_pairs, std::size_t m) {
    PartialOrder q(m);
    for (auto [a, b] : raw_pairs) q.add(a, b);
    return q;
}

inline PartialOrder add_preference(PartialOrder q, CandidateId a, CandidateId b) {
    q.add(a, b);
    return q;
}

/// Kendall tau distance: number of pairs the two orders rank oppositely.
inline std::size_t swap_distance(const LinearOrder& p, const LinearOrder& p2) {
    if (p.size() != p2.size()) throw PreconditionViolation("orders over different candidate sets");
    std::size_t d = 0;
    auto r = p.ranking();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (p2.prefers(r[j], r[i])) ++d;
    return d;
}

/// Mask form of an interval of p. An empty `hi` stands for +inf and an
/// empty `lo` for -inf.
inline CandidateSet interval_set(const LinearOrder& p, std::optional<CandidateId> hi, std::optional<CandidateId> lo,
                                 bool include_hi, bool include_lo) {
    std::size_t first = 0;
    std::size_t last = p.size(); // exclusive
    if (hi && lo && p.prefers(*lo, *hi)) throw InvalidBounds("upper bound is ranked below lower bound");
    if (hi) first = p.rank_of(*hi) + (include_hi ? 0 : 1);
    if (lo) last = p.rank_of(*lo) + (include_lo ? 1 : 0);
    CandidateSet s;
    for (std::size_t pos = first; pos < last; ++pos) s.insert(p.at(pos));
    return s;
}

/// Candidates of p between hi and lo, most preferred first.
inline std::vector<CandidateId> interval(const LinearOrder& p, std::optional<CandidateId> hi,
                                         std::optional<CandidateId> lo, bool include_hi, bool include_lo);

enum class Side { above, below };

/// Candidates committed above (or below) c in q, optionally including c.
inline CandidateSet interval_q(const PartialOrder& q, Side side, CandidateId c, bool include_c) {
    CandidateSet s = side == Side::above ? q.above(c) : q.below(c);
    if (include_c) s.insert(c);
    return s;
}

/// Members of t, most preferred by p first.
inline std::vector<CandidateId> project(const LinearOrder& p, CandidateSet t) {
    std::vector<CandidateId> out;
    out.reserve(t.size());
    for (auto c : p.ranking())
        if (t.contains(c)) out.push_back(c);
    return out;
}

/// Candidates of p between hi and lo, most preferred first.
inline std::vector<CandidateId> interval(const LinearOrder& p, std::optional<CandidateId> hi,
                                         std::optional<CandidateId> lo, bool include_hi, bool include_lo) {
    return project(p, interval_set(p, hi, lo, include_hi, include_lo));
}

/// p is a linear extension of q.
inline bool is_extension(const LinearOrder& p, const PartialOrder& q) {
    if (p.size() != q.size()) throw PreconditionViolation("orders over different candidate sets");
    for (std::size_t a = 0; a < q.size(); ++a) {
        auto ca = candidate(a);
        bool ok = true;
        q.below(ca).for_each([&](CandidateId b) { ok = ok && p.prefers(ca, b); });
        if (!ok) return false;
    }
    return true;
}

/// The partial order that commits every pair of p.
inline PartialOrder to_partial(const LinearOrder& p) {
    PartialOrder q(p.size());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) q.add(p.at(i), p.at(i + 1));
    return q;
}

} // namespace elicit
