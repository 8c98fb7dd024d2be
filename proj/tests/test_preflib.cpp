#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "elicit/preflib.hpp"
#include "test_support.hpp"

using namespace elicit;
using elicit::testing::L;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_soc(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("parse_soc reads counts and rankings") {
    auto ds = parse_soc("# NUMBER ALTERNATIVES: 3\n2: 1,2,3\n1: 3,1,2\n", "toy");
    CHECK(ds.name == "toy");
    CHECK(ds.m == 3);
    REQUIRE(ds.entries.size() == 2);
    CHECK(ds.entries[0].order == L({0, 1, 2}));
    CHECK(ds.entries[0].multiplicity == 2);
    CHECK(ds.entries[1].order == L({2, 0, 1}));
    CHECK(ds.entries[1].multiplicity == 1);
    CHECK(ds.total_votes() == 3);
    CHECK(ds.metadata == std::vector<std::string>{"NUMBER ALTERNATIVES: 3"});
}

TEST_CASE("parse_soc infers m without metadata and tolerates CRLF") {
    auto ds = parse_soc("\r\n4: 2, 1\r\n1: 1,2\r\n");
    CHECK(ds.m == 2);
    CHECK(ds.entries.size() == 2);
    CHECK(ds.total_votes() == 5);
}

TEST_CASE("parse_soc rejects malformed lines with their line number") {
    CHECK(error_line("# NUMBER ALTERNATIVES: 3\n1: 1,1,2\n") == 2);
    CHECK(error_line("# NUMBER ALTERNATIVES: 3\n1: 1,2,3\n1: 1,2\n") == 3);
    CHECK(error_line("1: 1,2,3\n1: 1,2,4\n") == 2);
    CHECK(error_line("0: 1,2\n") == 1);
    CHECK(error_line("1: 1,{2,3}\n") == 1);
    CHECK(error_line("1 1,2\n") == 1);
    CHECK(error_line("x: 1,2\n") == 1);
    CHECK(error_line("1: 1,,2\n") == 1);
    CHECK_THROWS_AS(parse_soc("# NUMBER ALTERNATIVES: 3\n1: 1,1,2\n"), ParseError);
}

TEST_CASE("to_soc round trip is a fixed point") {
    const std::string text = "# TITLE: toy\n# NUMBER ALTERNATIVES: 4\n3: 4,1,2,3\n1: 1,2,3,4\n";
    auto ds = parse_soc(text);
    CHECK(to_soc(ds) == text);
    auto again = parse_soc(to_soc(ds));
    CHECK(to_soc(again) == to_soc(ds));
    REQUIRE(again.entries.size() == ds.entries.size());
    for (std::size_t i = 0; i < ds.entries.size(); ++i) {
        CHECK(again.entries[i].order == ds.entries[i].order);
        CHECK(again.entries[i].multiplicity == ds.entries[i].multiplicity);
    }
}

TEST_CASE("sample_profiles") {
    std::mt19937_64 rng(5);
    auto single = parse_soc("7: 2,3,1\n");
    auto draws = sample_profiles(single, 4, rng);
    REQUIRE(draws.size() == 4);
    for (const auto& d : draws) CHECK(d == L({1, 2, 0}));
    CHECK_THROWS_AS(sample_profiles(single, 0, rng), PreconditionViolation);

    // Draw frequencies follow the multiplicities within three standard deviations.
    auto ds = parse_soc("6: 1,2,3\n3: 2,1,3\n1: 3,2,1\n");
    constexpr std::size_t n = 100000;
    auto many = sample_profiles(ds, n, rng);
    for (const auto& e : ds.entries) {
        const double p = static_cast<double>(e.multiplicity) / 10.0;
        const auto hits = static_cast<double>(std::ranges::count(many, e.order));
        const double sd = std::sqrt(n * p * (1 - p));
        CHECK(std::abs(hits - n * p) <= 3 * sd);
    }
}

TEST_CASE("bundled fixture loads") {
    auto ds = load_soc(ELICIT_FIXTURE);
    CHECK(ds.name == "sushi_synthetic");
    CHECK(ds.m == 10);
    CHECK(ds.total_votes() == 500);
    CHECK(parse_soc(to_soc(ds)).total_votes() == 500);
}

TEST_CASE("load_soc reports missing files") { CHECK_THROWS_AS(load_soc("/nonexistent/x.soc"), Error); }
