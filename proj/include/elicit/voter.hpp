#pragma once

#include <utility>

#include "manipulation.hpp"
#include "prefs.hpp"

namespace elicit {

enum class Behavior { truthful, manipulative };

inline const char* to_string(Behavior b) { return b == Behavior::truthful ? "truthful" : "manipulative"; }

/// A voter's answer to a pairwise query: `preferred` > `other`.
struct Answer {
    CandidateId preferred;
    CandidateId other;
    bool manipulated = false;
};

/// A voter agent. Answers from its current order, which starts at the true
/// order and only moves when the voter manipulates. Keeps its own copy of
/// what it has revealed so every new order stays consistent with it.
class VoterState {
public:
    VoterState() = default;
    explicit VoterState(LinearOrder truth) : p_true_(truth), p_current_(std::move(truth)), q_self_(p_true_.size()) {}

    const LinearOrder& p_true() const { return p_true_; }
    const LinearOrder& p_current() const { return p_current_; }
    const PartialOrder& q_self() const { return q_self_; }

    Answer respond(CandidateId a, CandidateId b, CandidateSet pw, Behavior behavior) {
        if (q_self_.comparable(a, b)) throw PreconditionViolation("query about an already revealed pair");
        auto [cj, ck] = p_current_.prefers(a, b) ? std::pair{a, b} : std::pair{b, a};
        Answer ans{cj, ck, false};
        if (behavior == Behavior::manipulative) {
            auto out = find_manipulation(p_current_, q_self_, pw, cj, ck);
            if (out.changed) {
                p_current_ = std::move(out.new_order);
                ans = {ck, cj, true};
            }
        }
        q_self_.add(ans.preferred, ans.other);
        return ans;
    }

private:
    LinearOrder p_true_;
    LinearOrder p_current_;
    PartialOrder q_self_;
};

} // namespace elicit
