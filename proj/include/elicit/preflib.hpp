#pragma once

// Strict-complete-order (SOC) election files.
//
//   # ALTERNATIVE NAME 1: ...        metadata, kept verbatim
//   COUNT: c1,c2,...,cm              one ranking with its multiplicity
//
// Candidate labels are 1-based in the file and 0-based in memory. The
// candidate count comes from a "NUMBER ALTERNATIVES" metadata line when
// present, otherwise from the first data line.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "prefs.hpp"

namespace elicit {

struct DatasetEntry {
    LinearOrder order;
    std::size_t multiplicity = 1;
};

struct Dataset {
    std::string name;
    std::size_t m = 0;
    std::vector<std::string> metadata;
    std::vector<DatasetEntry> entries;

    std::size_t total_votes() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.multiplicity;
        return n;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::size_t parse_count(std::string_view s, std::size_t line, const char* what) {
    s = trim(s);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

} // namespace detail

inline Dataset parse_soc(std::string_view text, std::string name = {}) {
    Dataset ds;
    ds.name = std::move(name);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto meta = detail::trim(line.substr(1));
            ds.metadata.emplace_back(meta);
            constexpr std::string_view key = "NUMBER ALTERNATIVES:";
            if (meta.starts_with(key) && ds.entries.empty())
                ds.m = detail::parse_count(meta.substr(key.size()), line_no, "alternative count");
            continue;
        }

        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'COUNT: ranking'");
        auto count = detail::parse_count(line.substr(0, colon), line_no, "count");
        if (count == 0) throw ParseError(line_no, "multiplicity must be positive");

        std::vector<std::size_t> labels;
        auto body = line.substr(colon + 1);
        if (body.find_first_of("{}") != std::string_view::npos) throw ParseError(line_no, "ties are not supported");
        std::size_t start = 0;
        while (start <= body.size()) {
            auto comma = body.find(',', start);
            auto tok = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            labels.push_back(detail::parse_count(tok, line_no, "candidate label"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }

        if (ds.m == 0) ds.m = labels.size();
        if (ds.m > kMaxCandidates) throw ParseError(line_no, "too many candidates");
        if (labels.size() != ds.m)
            throw ParseError(line_no, "incomplete order: expected " + std::to_string(ds.m) + " candidates, got " +
                                          std::to_string(labels.size()));
        std::vector<CandidateId> ranking;
        CandidateSet seen;
        for (auto label : labels) {
            if (label < 1 || label > ds.m) throw ParseError(line_no, "candidate label out of range");
            auto c = candidate(label - 1);
            if (seen.contains(c)) throw ParseError(line_no, "duplicate candidate " + std::to_string(label));
            seen.insert(c);
            ranking.push_back(c);
        }
        ds.entries.push_back({LinearOrder(std::move(ranking)), count});
    }
    return ds;
}

inline Dataset load_soc(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
    return parse_soc(buf.str(), name);
}

inline std::string to_soc(const Dataset& ds) {
    std::ostringstream os;
    for (const auto& meta : ds.metadata) os << "# " << meta << '\n';
    for (const auto& e : ds.entries) {
        os << e.multiplicity << ':';
        for (std::size_t i = 0; i < e.order.size(); ++i) os << (i ? "," : " ") << index(e.order.at(i)) + 1;
        os << '\n';
    }
    return os.str();
}

/// n independent draws, each entry weighted by its multiplicity.
template <class Rng>
std::vector<LinearOrder> sample_profiles(const Dataset& ds, std::size_t n, Rng& rng) {
    if (n == 0) throw PreconditionViolation("need at least one voter");
    if (ds.entries.empty()) throw PreconditionViolation("empty dataset");
    std::vector<double> weights;
    weights.reserve(ds.entries.size());
    for (const auto& e : ds.entries) weights.push_back(static_cast<double>(e.multiplicity));
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<LinearOrder> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(ds.entries[pick(rng)].order);
    return out;
}

} // namespace elicit
