#pragma once

// Batch harness: sweeps voter counts, profile sets, repetitions and center
// policies, runs every election once with truthful and once with
// manipulative voters on the same random stream, and reports per-run
// records plus grouped means.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "center.hpp"
#include "preflib.hpp"

namespace elicit {

struct ExperimentConfig {
    std::string dataset;
    std::vector<std::size_t> voter_counts;
    std::vector<Policy> policies;
    std::vector<Behavior> behaviors;
    std::size_t profile_sets = 20;
    std::size_t reps_per_set = 40;
    std::uint64_t base_seed = 1;
    std::string output;
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;
    bool check_invariants = true;

    void validate() const {
        if (voter_counts.empty() || policies.empty() || behaviors.empty())
            throw PreconditionViolation("config needs voter_counts, policies and behaviors");
        if (profile_sets == 0 || reps_per_set == 0) throw PreconditionViolation("counts must be at least 1");
        for (auto n : voter_counts)
            if (n == 0) throw PreconditionViolation("voter counts must be at least 1");
    }
};

inline ExperimentConfig default_config() {
    ExperimentConfig cfg;
    for (std::size_t n = 4; n <= 20; ++n) cfg.voter_counts.push_back(n);
    cfg.policies = {{Selector::es, false}, {Selector::es, true}, {Selector::random, false}, {Selector::random, true}};
    cfg.behaviors = {Behavior::truthful, Behavior::manipulative};
    return cfg;
}

namespace detail {

inline std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto tok = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!tok.empty()) out.push_back(tok);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::uint64_t parse_u64(std::string_view s, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(s) + "'");
    return v;
}

inline bool parse_bool(std::string_view s, std::size_t line) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParseError(line, "expected a boolean, got '" + std::string(s) + "'");
}

} // namespace detail

inline Policy parse_policy(std::string_view s) {
    Policy p;
    if (s.starts_with("careful-")) {
        p.careful = true;
        s.remove_prefix(8);
    }
    if (s == "es") p.selector = Selector::es;
    else if (s == "random") p.selector = Selector::random;
    else throw PreconditionViolation("unknown policy '" + std::string(s) + "'");
    return p;
}

inline Behavior parse_behavior(std::string_view s) {
    if (s == "truthful") return Behavior::truthful;
    if (s == "manipulative") return Behavior::manipulative;
    throw PreconditionViolation("unknown behavior '" + std::string(s) + "'");
}

/// Flat `key = value` config. Lists are comma-separated; voter counts also
/// accept `a..b` ranges. Unset keys keep the defaults of default_config().
inline ExperimentConfig parse_config(std::string_view text) {
    auto cfg = default_config();
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));

        if (key == "dataset") {
            cfg.dataset = value;
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "voter_counts") {
            cfg.voter_counts.clear();
            for (auto tok : detail::split_list(value)) {
                if (auto dots = tok.find(".."); dots != std::string_view::npos) {
                    auto lo = detail::parse_u64(detail::trim(tok.substr(0, dots)), line_no);
                    auto hi = detail::parse_u64(detail::trim(tok.substr(dots + 2)), line_no);
                    if (lo > hi) throw ParseError(line_no, "empty voter range");
                    for (auto n = lo; n <= hi; ++n) cfg.voter_counts.push_back(n);
                } else {
                    cfg.voter_counts.push_back(detail::parse_u64(tok, line_no));
                }
            }
        } else if (key == "policies") {
            cfg.policies.clear();
            for (auto tok : detail::split_list(value)) {
                try {
                    cfg.policies.push_back(parse_policy(tok));
                } catch (const PreconditionViolation& e) {
                    throw ParseError(line_no, e.what());
                }
            }
        } else if (key == "behaviors") {
            cfg.behaviors.clear();
            for (auto tok : detail::split_list(value)) {
                try {
                    cfg.behaviors.push_back(parse_behavior(tok));
                } catch (const PreconditionViolation& e) {
                    throw ParseError(line_no, e.what());
                }
            }
        } else if (key == "profile_sets") {
            cfg.profile_sets = detail::parse_u64(value, line_no);
        } else if (key == "reps_per_set") {
            cfg.reps_per_set = detail::parse_u64(value, line_no);
        } else if (key == "base_seed") {
            cfg.base_seed = detail::parse_u64(value, line_no);
        } else if (key == "threads") {
            cfg.threads = detail::parse_u64(value, line_no);
        } else if (key == "check_invariants") {
            cfg.check_invariants = detail::parse_bool(value, line_no);
        } else {
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    return cfg;
}

/// One election of the sweep. Candidate labels are 1-based, as in the data file.
struct RunRecord {
    std::string dataset;
    Selector policy = Selector::es;
    bool careful = false;
    Behavior behavior = Behavior::truthful;
    std::size_t n_voters = 0;
    std::size_t set_index = 0;
    std::size_t rep_index = 0;
    std::size_t queries_issued = 0;
    std::size_t max_queries = 0;
    std::size_t manipulated_count = 0;
    std::size_t winner = 0;
    std::size_t paired_truthful_winner = 0;
    bool outcome_changed = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

inline std::uint64_t policy_code(const Policy& p) {
    return (p.selector == Selector::es ? 0U : 2U) + (p.careful ? 1U : 0U);
}

} // namespace detail

/// Seed of the profile sample for (n, set).
inline std::uint64_t profile_seed(std::uint64_t base, std::size_t n, std::size_t set) {
    return detail::mix_seed({base, 0x70726f66ULL, n, set});
}

/// Seed of the query-selection stream shared by a truthful/manipulative pair.
inline std::uint64_t election_seed(std::uint64_t base, std::size_t n, std::size_t set, std::size_t rep,
                                   const Policy& policy) {
    return detail::mix_seed({base, 0x656c6563ULL, n, set, rep, detail::policy_code(policy)});
}

/// Runs `count` independent tasks over a small worker pool.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& task) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Runs the whole sweep. Records come back ordered by (n, set, rep, policy
/// as configured, behavior as configured) whatever the thread count.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const Dataset& ds) {
    cfg.validate();
    if (ds.entries.empty()) throw PreconditionViolation("empty dataset");

    struct Task {
        std::size_t n, set, rep, policy;
    };
    std::vector<Task> tasks;
    for (auto n : cfg.voter_counts)
        for (std::size_t set = 0; set < cfg.profile_sets; ++set)
            for (std::size_t rep = 0; rep < cfg.reps_per_set; ++rep)
                for (std::size_t p = 0; p < cfg.policies.size(); ++p) tasks.push_back({n, set, rep, p});

    const bool want_manip = std::ranges::find(cfg.behaviors, Behavior::manipulative) != cfg.behaviors.end();
    const std::size_t per_task = cfg.behaviors.size();
    std::vector<RunRecord> records(tasks.size() * per_task);

    RunOptions opts;
    opts.check_invariants = cfg.check_invariants;
    opts.keep_trace = false;

    parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
        const auto& task = tasks[t];
        const auto& policy = cfg.policies[task.policy];
        std::mt19937_64 profile_rng(profile_seed(cfg.base_seed, task.n, task.set));
        auto profiles = sample_profiles(ds, task.n, profile_rng);
        const auto seed = election_seed(cfg.base_seed, task.n, task.set, task.rep, policy);

        std::mt19937_64 truthful_rng(seed);
        auto truthful = run_election(std::span<const LinearOrder>(profiles), Behavior::truthful, policy,
                                     truthful_rng, opts);
        ElectionResult manip;
        if (want_manip) {
            std::mt19937_64 manip_rng(seed);
            manip = run_election(std::span<const LinearOrder>(profiles), Behavior::manipulative, policy, manip_rng,
                                 opts);
        }

        for (std::size_t b = 0; b < per_task; ++b) {
            const auto behavior = cfg.behaviors[b];
            const auto& res = behavior == Behavior::truthful ? truthful : manip;
            RunRecord r;
            r.dataset = ds.name;
            r.policy = policy.selector;
            r.careful = policy.careful;
            r.behavior = behavior;
            r.n_voters = task.n;
            r.set_index = task.set;
            r.rep_index = task.rep;
            r.queries_issued = res.queries;
            r.max_queries = res.max_queries;
            r.manipulated_count = res.manipulated;
            r.winner = index(res.winner) + 1;
            r.paired_truthful_winner = index(truthful.winner) + 1;
            r.outcome_changed = r.winner != r.paired_truthful_winner;
            records[t * per_task + b] = std::move(r);
        }
    });
    return records;
}

struct SummaryRow {
    Selector policy = Selector::es;
    bool careful = false;
    Behavior behavior = Behavior::truthful;
    /// 0 when the row pools every voter count.
    std::size_t n_voters = 0;
    std::size_t runs = 0;
    double manipulation_ratio = 0;
    double outcome_changed = 0;
    double fraction_queried = 0;
    double mean_queries = 0;
};

/// Means per (policy, careful, behavior, n). With `pool_voters` the voter
/// count is dropped from the key.
inline std::vector<SummaryRow> summarize(std::span<const RunRecord> records, bool pool_voters = false) {
    if (records.empty()) throw PreconditionViolation("no records to summarize");
    using Key = std::tuple<int, bool, int, std::size_t>;
    std::map<Key, SummaryRow> groups;
    for (const auto& r : records) {
        Key key{static_cast<int>(r.policy), r.careful, static_cast<int>(r.behavior), pool_voters ? 0 : r.n_voters};
        auto& row = groups[key];
        row.policy = r.policy;
        row.careful = r.careful;
        row.behavior = r.behavior;
        row.n_voters = std::get<3>(key);
        ++row.runs;
        if (r.queries_issued > 0)
            row.manipulation_ratio += static_cast<double>(r.manipulated_count) / static_cast<double>(r.queries_issued);
        row.outcome_changed += r.outcome_changed ? 1.0 : 0.0;
        row.fraction_queried += static_cast<double>(r.queries_issued) / static_cast<double>(r.max_queries);
        row.mean_queries += static_cast<double>(r.queries_issued);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (auto& [key, row] : groups) {
        auto runs = static_cast<double>(row.runs);
        row.manipulation_ratio /= runs;
        row.outcome_changed /= runs;
        row.fraction_queried /= runs;
        row.mean_queries /= runs;
        out.push_back(row);
    }
    return out;
}

inline constexpr std::string_view kRecordsHeader =
    "dataset,policy,careful,behavior,n_voters,set_index,rep_index,queries_issued,max_queries,manipulated_count,"
    "winner,paired_truthful_winner,outcome_changed";

inline constexpr std::string_view kSummaryHeader =
    "policy,careful,behavior,n_voters,runs,manipulation_ratio,outcome_changed,fraction_queried,mean_queries";

inline void write_records_csv(std::ostream& os, std::span<const RunRecord> records) {
    os << kRecordsHeader << '\n';
    for (const auto& r : records) {
        os << r.dataset << ',' << to_string(r.policy) << ',' << (r.careful ? "true" : "false") << ','
           << to_string(r.behavior) << ',' << r.n_voters << ',' << r.set_index << ',' << r.rep_index << ','
           << r.queries_issued << ',' << r.max_queries << ',' << r.manipulated_count << ',' << r.winner << ','
           << r.paired_truthful_winner << ',' << (r.outcome_changed ? "true" : "false") << '\n';
    }
}

inline void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows) {
    os << kSummaryHeader << '\n';
    char buf[64];
    auto fixed = [&](double v) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
        return std::string(buf, end);
    };
    for (const auto& r : rows) {
        os << to_string(r.policy) << ',' << (r.careful ? "true" : "false") << ',' << to_string(r.behavior) << ','
           << r.n_voters << ',' << r.runs << ',' << fixed(r.manipulation_ratio) << ',' << fixed(r.outcome_changed)
           << ',' << fixed(r.fraction_queried) << ',' << fixed(r.mean_queries) << '\n';
    }
}

} // namespace elicit
