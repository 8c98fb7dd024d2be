// Command-line front end: single traced runs, batch experiments and the
// randomized check of the manipulation search against brute force.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "elicit/elicit.hpp"

namespace fs = std::filesystem;
using namespace elicit;

namespace {

std::string label(CandidateId c) { return std::to_string(index(c) + 1); }

int cmd_run(const std::string& dataset_path, std::size_t voters, const std::string& policy_name_arg, bool careful,
            const std::string& behavior_name, std::uint64_t seed) {
    auto ds = load_soc(dataset_path);
    auto policy = parse_policy(policy_name_arg);
    policy.careful = policy.careful || careful;
    auto behavior = parse_behavior(behavior_name);

    std::mt19937_64 profile_rng(profile_seed(seed, voters, 0));
    auto profiles = sample_profiles(ds, voters, profile_rng);
    std::mt19937_64 rng(election_seed(seed, voters, 0, 0, policy));
    RunOptions opts;
    opts.check_invariants = true;
    auto res = run_election(std::span<const LinearOrder>(profiles), behavior, policy, rng, opts);

    std::cout << "# dataset " << ds.name << ", " << ds.m << " candidates, " << voters << " voters, "
              << policy_name(policy) << ", " << to_string(behavior) << ", seed " << seed << '\n';
    for (std::size_t v = 0; v < profiles.size(); ++v) {
        std::cout << "# voter " << v + 1 << ':';
        for (auto c : profiles[v].ranking()) std::cout << ' ' << label(c);
        std::cout << '\n';
    }
    std::cout << "round\tvoter\tquery\tresponse\tmanipulated\tsafe\tpw\n";
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
        const auto& s = res.trace[i];
        std::cout << i + 1 << '\t' << index(s.query.voter) + 1 << '\t' << label(s.query.cj) << ',' << label(s.query.ck)
                  << '\t' << label(s.preferred) << '>' << label(s.other) << '\t' << (s.manipulated ? "yes" : "no")
                  << '\t' << (s.safe ? "yes" : "no") << '\t';
        bool first = true;
        s.pw.for_each([&](CandidateId c) {
            std::cout << (first ? "" : ",") << label(c);
            first = false;
        });
        std::cout << '\n';
    }
    std::cout << "winner " << label(res.winner) << "\nqueries " << res.queries << " of " << res.max_queries
              << "\nmanipulated " << res.manipulated << '\n';
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir) {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config(buf.str());
    if (!out_dir.empty()) cfg.output = out_dir;
    if (cfg.output.empty()) throw Error("no output directory given");
    if (cfg.dataset.empty()) throw Error("config has no dataset");

    fs::path dataset = cfg.dataset;
    if (dataset.is_relative() && !fs::exists(dataset)) dataset = fs::path(config_path).parent_path() / dataset;
    auto ds = load_soc(dataset.string());

    auto records = run_experiment(cfg, ds);
    fs::create_directories(cfg.output);
    std::ofstream rec(fs::path(cfg.output) / "records.csv", std::ios::binary);
    write_records_csv(rec, records);
    std::ofstream sum(fs::path(cfg.output) / "summary.csv", std::ios::binary);
    write_summary_csv(sum, summarize(records));
    std::cerr << records.size() << " records written to " << cfg.output << '\n';
    return 0;
}

int cmd_oracle_check(std::size_t m, std::size_t instances, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        auto in = oracle::random_instance(m, rng);
        auto fast = find_manipulation(in.p, in.q, in.pw, in.cj, in.ck);
        auto slow = oracle::oracle_manipulation(in.p, in.q, in.pw, in.cj, in.ck);
        if (fast.changed != slow.changed || fast.distance != slow.distance) {
            std::cout << "MISMATCH at instance " << i << ": " << in << '\n'
                      << "  search: changed=" << fast.changed << " distance=" << fast.distance << " order="
                      << fast.new_order << '\n'
                      << "  oracle: changed=" << slow.changed << " distance=" << slow.distance << " order="
                      << slow.new_order << '\n';
            return 1;
        }
        if (slow.changed) ++changed;
    }
    std::cout << instances << " instances agree (m=" << m << ", " << changed << " manipulable)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative Borda elicitation with strategic voters"};
    app.require_subcommand(1);

    std::string dataset, policy = "es", behavior = "truthful";
    std::size_t voters = 0;
    bool careful = false;
    std::uint64_t seed = 1;
    auto* run = app.add_subcommand("run", "Run one election and print its trace");
    run->add_option("--dataset", dataset, "SOC data file")->required()->check(CLI::ExistingFile);
    run->add_option("--voters", voters, "Number of sampled voters")->required()->check(CLI::PositiveNumber);
    run->add_option("--policy", policy, "Query selector")->check(CLI::IsMember({"es", "random"}));
    run->add_flag("--careful", careful, "Prefer safe queries");
    run->add_option("--behavior", behavior, "Voter behavior")->check(CLI::IsMember({"truthful", "manipulative"}));
    run->add_option("--seed", seed, "Base seed");

    std::string config, out;
    auto* exp = app.add_subcommand("experiment", "Run a configured sweep and write CSV");
    exp->add_option("--config", config, "Key-value config file")->required()->check(CLI::ExistingFile);
    exp->add_option("--out", out, "Output directory");

    std::size_t m = 5, instances = 10000;
    std::uint64_t oracle_seed = 1;
    auto* oc = app.add_subcommand("oracle-check", "Compare the manipulation search with brute force");
    oc->add_option("--m", m, "Candidates (2..8)")->check(CLI::Range(2, 8));
    oc->add_option("--instances", instances, "Random instances");
    oc->add_option("--seed", oracle_seed, "Seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(dataset, voters, policy, careful, behavior, seed);
        if (*exp) return cmd_experiment(config, out);
        if (*oc) return cmd_oracle_check(m, instances, oracle_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
