// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elicit/elicit.hpp"

using namespace elicit;

namespace {

int failures = 0;

template <class... Parts>
std::string str(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

void report(int id, bool ok, const std::string& detail) {
    std::cout << "criterion " << id << " [PRIMARY] " << (ok ? "PASS" : "FAIL") << ": " << detail << std::endl;
    if (!ok) ++failures;
}

struct SearchTally {
    std::size_t instances = 0;
    std::size_t mismatches = 0;
    std::size_t manipulable = 0;
    std::size_t safe = 0;
    std::size_t safe_changed = 0;
    std::string first_mismatch;
};

bool agrees(const LinearOrder& p, const PartialOrder& q, CandidateSet pw, CandidateId cj, CandidateId ck) {
    auto fast = find_manipulation(p, q, pw, cj, ck);
    auto slow = oracle::oracle_manipulation(p, q, pw, cj, ck);
    if (fast.changed != slow.changed) return false;
    if (!fast.changed) return fast.new_order == p;
    if (fast.distance != slow.distance || fast.distance != swap_distance(p, fast.new_order)) return false;
    auto mu = oracle::mu_set(p, q, ck, cj);
    if (std::ranges::find(mu, fast.new_order) == mu.end()) return false;
    return is_locally_dominant(fast.new_order, p, order_pw(p, pw));
}

void check_instance(SearchTally& t, const LinearOrder& p, const PartialOrder& q, CandidateSet pw, CandidateId cj,
                    CandidateId ck) {
    ++t.instances;
    if (!agrees(p, q, pw, cj, ck)) {
        if (t.mismatches++ == 0)
            t.first_mismatch = str(oracle::Instance{p, q, pw, cj, ck});
        return;
    }
    auto out = find_manipulation(p, q, pw, cj, ck);
    if (out.changed) ++t.manipulable;
    if (pw.contains(cj) && pw.contains(ck)) {
        ++t.safe;
        if (out.changed) ++t.safe_changed;
    }
}

/// Every closure of at most three committed pairs on four candidates, every
/// extension p, every nonempty possible-winner set, every open query.
SearchTally exhaustive_m4() {
    constexpr std::size_t m = 4;
    std::vector<Pair> ordered;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (a != b) ordered.emplace_back(candidate(a), candidate(b));

    std::vector<PartialOrder> closures;
    auto remember = [&](const PartialOrder& q) {
        if (std::ranges::find(closures, q) == closures.end()) closures.push_back(q);
    };
    remember(PartialOrder(m));
    for (std::size_t i = 0; i < ordered.size(); ++i)
        for (std::size_t j = i; j < ordered.size(); ++j)
            for (std::size_t k = j; k < ordered.size(); ++k) {
                PartialOrder q(m);
                try {
                    for (auto idx : {i, j, k}) {
                        auto [a, b] = ordered[idx];
                        if (!q.prec(a, b)) q.add(a, b);
                    }
                } catch (const InconsistencyError&) {
                    continue;
                }
                remember(q);
            }

    SearchTally t;
    for (const auto& q : closures)
        for (const auto& p : oracle::enumerate_extensions(q).extensions)
            for (CandidateSet::Mask mask = 1; mask < (1u << m); ++mask)
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b) {
                        auto cj = candidate(a), ck = candidate(b);
                        if (a == b || q.comparable(cj, ck) || !p.prefers(cj, ck)) continue;
                        check_instance(t, p, q, CandidateSet(mask), cj, ck);
                    }
    return t;
}

SearchTally random_instances(std::size_t m, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SearchTally t;
    for (std::size_t i = 0; i < count; ++i) {
        auto in = oracle::random_instance(m, rng);
        check_instance(t, in.p, in.q, in.pw, in.cj, in.ck);
    }
    return t;
}

template <class Rng>
LinearOrder shuffled(std::size_t m, Rng& rng) {
    std::vector<CandidateId> r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = candidate(i);
    std::ranges::shuffle(r, rng);
    return LinearOrder(std::move(r));
}

double mean_of(std::span<const SummaryRow> rows, Selector s, bool careful, Behavior b, double SummaryRow::*field) {
    for (const auto& r : rows)
        if (r.policy == s && r.careful == careful && r.behavior == b) return r.*field;
    throw InvariantViolation("summary row missing");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();

    // 1 and 3 share the same instances.
    auto ex = exhaustive_m4();
    auto r5 = random_instances(5, 10000, 501);
    auto r6 = random_instances(6, 10000, 601);
    {
        auto bad = ex.mismatches + r5.mismatches + r6.mismatches;
        auto detail = str(ex.instances, " exhaustive m=4, ", r5.instances, " random m=5, ", r6.instances, " random m=6 instances; ", ex.manipulable + r5.manipulable + r6.manipulable, " manipulable; ", bad, " mismatches");
        if (bad) {
            for (const auto* t : {&ex, &r5, &r6})
                if (t->mismatches) {
                    detail += "; first: " + t->first_mismatch;
                    break;
                }
        }
        report(1, bad == 0 && ex.instances > 0, detail);
    }

    {
        std::mt19937_64 rng(2002);
        std::size_t runs = 0, wrong = 0;
        for (std::size_t n = 1; n <= 10; ++n)
            for (std::size_t m = 2; m <= 7; ++m)
                for (int rep = 0; rep < 5; ++rep)
                    for (auto selector : {Selector::es, Selector::random})
                        for (bool careful : {false, true}) {
                            std::vector<LinearOrder> profile;
                            for (std::size_t v = 0; v < n; ++v) profile.push_back(shuffled(m, rng));
                            auto res = run_election(std::span<const LinearOrder>(profile), Behavior::truthful,
                                                    Policy{selector, careful}, rng, RunOptions{true, false});
                            ++runs;
                            if (res.winner != borda_winner(profile)) ++wrong;
                        }
        report(2, runs >= 1000 && wrong == 0,
               str(runs, " truthful elections (n 1..10, m 2..7), ", wrong, " winners differ from Borda"));
    }

    {
        auto safe = ex.safe + r5.safe + r6.safe;
        auto changed = ex.safe_changed + r5.safe_changed + r6.safe_changed;
        report(3, safe > 0 && changed == 0, str(safe, " safe queries, ", changed, " changed the order"));
    }

    {
        std::mt19937_64 rng(404);
        std::size_t closures = 0, checked = 0, wrong = 0;
        std::uniform_real_distribution<double> density(0.0, 0.7);
        for (; closures < 10000; ++closures) {
            const std::size_t m = 2 + rng() % 5;
            auto base = shuffled(m, rng);
            PartialOrder q(m);
            std::bernoulli_distribution keep(density(rng));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (keep(rng)) q.add(base.at(i), base.at(j));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    if (a == b) continue;
                    auto range = oracle::pair_diff_range(q, candidate(a), candidate(b));
                    ++checked;
                    if (range.max != max_pair_diff(q, candidate(a), candidate(b)) ||
                        range.min != min_pair_diff(q, candidate(a), candidate(b)))
                        ++wrong;
                }
        }
        report(4, wrong == 0, str(closures, " closures (m 2..6), ", checked, " ordered pairs, ", wrong, " bound mismatches"));
    }

    // 5 through 8 read one sweep over the bundled rankings.
    ExperimentConfig cfg = default_config();
    cfg.profile_sets = 5;
    cfg.reps_per_set = 10;
    cfg.base_seed = 2024;
    cfg.check_invariants = true;
    std::vector<RunRecord> records;
    std::string violation;
    try {
        records = run_experiment(cfg, load_soc(ELICIT_FIXTURE));
    } catch (const InvariantViolation& e) {
        violation = e.what();
    }

    if (!violation.empty()) {
        for (int id : {5, 6, 7}) report(id, false, "sweep aborted: " + violation);
        report(8, false, "invariant violation: " + violation);
    } else {
        auto rows = summarize(records, true);
        const auto M = Behavior::manipulative, T = Behavior::truthful;
        auto ratio = [&](Selector s, bool c) { return mean_of(rows, s, c, M, &SummaryRow::manipulation_ratio); };
        auto changed = [&](Selector s, bool c) { return mean_of(rows, s, c, M, &SummaryRow::outcome_changed); };
        auto queried = [&](Selector s, bool c) { return mean_of(rows, s, c, T, &SummaryRow::fraction_queried); };

        const double es = ratio(Selector::es, false), ces = ratio(Selector::es, true);
        const double rnd = ratio(Selector::random, false), crnd = ratio(Selector::random, true);
        const bool bounded = std::max({es, ces, rnd, crnd}) <= 0.02;
        report(5, bounded && crnd <= rnd,
               str("manipulation ratio ES ", fmt(es), " Careful-ES ", fmt(ces), " RANDOM ", fmt(rnd), " Careful-RANDOM ", fmt(crnd), " (bound 0.02, Careful-RANDOM <= RANDOM: ", crnd <= rnd ? "yes" : "no", ")"));

        const double oc_r = changed(Selector::random, false), oc_cr = changed(Selector::random, true);
        report(6, oc_r <= 0.25 && oc_cr <= oc_r,
               str("outcome changed RANDOM ", fmt(oc_r), " Careful-RANDOM ", fmt(oc_cr), " (bound 0.25, Careful-RANDOM <= RANDOM: ", oc_cr <= oc_r ? "yes" : "no", ")"));

        const double fq_es = queried(Selector::es, false), fq_r = queried(Selector::random, false);
        report(7, fq_es < fq_r,
               str("fraction queried, truthful: ES ", fmt(fq_es), " RANDOM ", fmt(fq_r)));

        std::size_t manip_runs = 0;
        for (const auto& r : records)
            if (r.behavior == M) ++manip_runs;
        report(8, manip_runs > 0, str(manip_runs, " manipulative runs checked after every answer, 0 violations"));
    }

    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << failures << " of 8 criteria failed (" << fmt(secs) << " s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
