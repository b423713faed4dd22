#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "examples.hpp"
#include "oracles.hpp"
#include "srkit/enumeration.hpp"
#include "srkit/generators.hpp"
#include "srkit/partition.hpp"

using namespace srkit;

namespace {

std::vector<Partition> reduced_only(const std::vector<Partition>& ps) {
    std::vector<Partition> out;
    for (const auto& p : ps)
        if (is_reduced(p)) out.push_back(p);
    return out;
}

std::set<std::vector<int>> partner_sets(const std::vector<Matching>& ms) {
    std::set<std::vector<int>> out;
    for (const auto& m : ms) out.insert(m.partners());
    return out;
}

std::set<std::vector<int>> succ_sets(const std::vector<Partition>& ps) {
    std::set<std::vector<int>> out;
    for (const auto& p : ps) out.insert(p.succs());
    return out;
}

bool contains(const std::vector<Matching>& ms, const Matching& m) {
    return std::find(ms.begin(), ms.end(), m) != ms.end();
}

// Pairs appearing in some stable matching, computed straight from the oracle.
std::set<std::pair<int, int>> oracle_pairs(const oracle::Rows& rows) {
    std::set<std::pair<int, int>> out;
    for (const auto& m : oracle::stable_matchings(rows))
        for (int a = 0; a < static_cast<int>(m.size()); ++a) {
            if (m[a] < 0) out.insert({a, a});
            else if (a < m[a]) out.insert({a, m[a]});
        }
    return out;
}

} // namespace

TEST(Brute, Example1) {
    auto inst = examples::example1();
    auto ms = brute_all_matchings(inst);
    EXPECT_EQ(ms.size(), 2u);
    EXPECT_EQ(partner_sets(ms), oracle::stable_matchings(oracle::rows_of(inst)));
    auto ps = brute_all_partitions(inst);
    EXPECT_EQ(ps.size(), 3u);
    EXPECT_EQ(succ_sets(ps), oracle::stable_partitions(oracle::rows_of(inst)));
}

TEST(Brute, Example2HasNoMatching) {
    auto inst = examples::example2();
    EXPECT_TRUE(brute_all_matchings(inst).empty());
    auto ps = brute_all_partitions(inst);
    EXPECT_FALSE(ps.empty());
    for (const auto& p : ps) EXPECT_TRUE(has_long_odd_cycle(p));
}

TEST(Brute, Example3) {
    auto inst = examples::example3();
    auto ms = brute_all_matchings(inst);
    EXPECT_TRUE(contains(ms, examples::matching(6, {{1, 2}, {3, 6}, {4, 5}})));
    EXPECT_TRUE(contains(ms, examples::matching(6, {{1, 3}, {2, 5}, {4, 6}})));
    // a third stable matching exists beyond the two named ones
    EXPECT_TRUE(contains(ms, examples::matching(6, {{1, 4}, {2, 6}, {3, 5}})));
    EXPECT_EQ(ms.size(), oracle::stable_matchings(oracle::rows_of(inst)).size());
    EXPECT_EQ(ms.size(), 3u);
}

TEST(Brute, TooLarge) {
    auto big = generate_trial(Culture{}, 13, 1, 0);
    try {
        brute_all_matchings(big);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLargeForOracle);
    }
    try {
        brute_all_partitions(generate_trial(Culture{}, 9, 1, 0));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLargeForOracle);
    }
}

TEST(Enum, Examples) {
    auto r1 = enum_stable_matchings(examples::example1());
    EXPECT_EQ(r1.items, brute_all_matchings(examples::example1()));
    EXPECT_FALSE(r1.budget_exhausted);
    EXPECT_EQ(enum_all_partitions(examples::example1()).items.size(), 3u);

    try {
        enum_stable_matchings(examples::example2());
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Unsolvable);
    }

    auto r3 = enum_stable_matchings(examples::example3());
    EXPECT_EQ(r3.items.size(), 3u);
    EXPECT_EQ(enum_all_partitions(examples::example3()).items.size(), 5u);
}

TEST(Enum, MatchesBruteForce) {
    Rng rng(301);
    const auto& tags = all_cultures();
    for (int i = 0; i < 1500; ++i) {
        auto tag = tags[rng.below(tags.size())];
        int n = 3 + static_cast<int>(rng.below(6));
        if (tag == CultureTag::Symmetric && n % 2) ++n;
        auto inst = generate(Culture{tag}, n, rng);

        auto all = brute_all_partitions(inst);
        auto got_all = enum_all_partitions(inst);
        ASSERT_EQ(got_all.items, all) << culture_name(tag) << " n=" << n << " i=" << i;
        ASSERT_EQ(enum_reduced_partitions(inst).items, reduced_only(all));

        auto ms = brute_all_matchings(inst);
        if (is_solvable(inst)) ASSERT_EQ(enum_stable_matchings(inst).items, ms);
        else ASSERT_TRUE(ms.empty());
    }
}

TEST(Enum, OracleAgreesOnSmall) {
    Rng rng(302);
    for (int i = 0; i < 200; ++i) {
        int n = 3 + static_cast<int>(rng.below(5));
        auto inst = gen_ic(n, rng);
        auto rows = oracle::rows_of(inst);
        EXPECT_EQ(succ_sets(enum_all_partitions(inst).items), oracle::stable_partitions(rows));
        if (is_solvable(inst)) EXPECT_EQ(partner_sets(enum_stable_matchings(inst).items), oracle::stable_matchings(rows));
    }
}

TEST(Enum, ProbeDoesNotChangeResults) {
    Rng rng(303);
    EnumOptions off;
    off.probe = false;
    for (int i = 0; i < 300; ++i) {
        auto inst = gen_ic(6 + static_cast<int>(rng.below(20)), rng);
        auto a = enum_all_partitions(inst);
        auto b = enum_all_partitions(inst, off);
        ASSERT_EQ(a.items, b.items);
    }
}

TEST(Enum, ChainAndBounds) {
    Rng rng(304);
    for (int i = 0; i < 500; ++i) {
        auto inst = gen_ic(4 + static_cast<int>(rng.below(30)), rng);
        auto s = enumerate_solutions(inst);
        ASSERT_FALSE(s.budget_exhausted);
        ASSERT_GE(s.reduced_partitions.size(), 1u);
        ASSERT_LE(s.matchings.size(), s.reduced_partitions.size());
        ASSERT_LE(s.reduced_partitions.size(), s.all_partitions.size());
        ASSERT_EQ(s.solvable, is_solvable(inst));
        if (s.solvable) ASSERT_EQ(s.matchings.size(), s.reduced_partitions.size());
        for (const auto& p : s.all_partitions) ASSERT_TRUE(is_stable_partition(inst, p));
        for (const auto& p : s.reduced_partitions) ASSERT_TRUE(is_reduced(p));
        // every stable partition has the same odd cycles
        auto odd_of = [](const Partition& p) {
            std::vector<Cycle> out;
            for (auto& c : cycles_of(p))
                if (c.odd()) out.push_back(c);
            return out;
        };
        for (const auto& p : s.all_partitions) ASSERT_EQ(odd_of(p), odd_of(s.all_partitions.front()));
    }
}

TEST(Collect, Example1) {
    auto s = enumerate_solutions(examples::example1());
    EXPECT_TRUE(s.solvable);
    EXPECT_EQ(s.matchings.size(), 2u);
    EXPECT_EQ(s.reduced_partitions.size(), 2u);
    EXPECT_EQ(s.all_partitions.size(), 3u);
    // reduced cycles are pairs; the extra partition contributes a 4-cycle
    for (const auto& c : s.reduced_stable_cycles) EXPECT_EQ(c.length(), 2);
    EXPECT_TRUE(std::any_of(s.stable_cycles.begin(), s.stable_cycles.end(), [](const Cycle& c) { return c.length() == 4; }));
    std::set<std::pair<int, int>> pairs(s.stable_pairs.begin(), s.stable_pairs.end());
    EXPECT_EQ(pairs, oracle_pairs(oracle::rows_of(examples::example1())));
}

TEST(Collect, Example2) {
    auto s = enumerate_solutions(examples::example2());
    EXPECT_FALSE(s.solvable);
    EXPECT_TRUE(s.matchings.empty());
    EXPECT_TRUE(s.stable_pairs.empty());
    EXPECT_EQ(s.reduced_stable_cycles, cycles_of(examples::partition(6, {{1, 2, 3}, {4, 5, 6}})));
}

TEST(Collect, Example3) {
    auto s = enumerate_solutions(examples::example3());
    EXPECT_EQ(s.stable_pairs.size(), 9u);
    std::set<std::pair<int, int>> pairs(s.stable_pairs.begin(), s.stable_pairs.end());
    EXPECT_EQ(pairs, oracle_pairs(oracle::rows_of(examples::example3())));
}

TEST(Collect, OddSolvableAddsFixedPoint) {
    Rng rng(305);
    int seen = 0;
    for (int i = 0; i < 400 && seen < 20; ++i) {
        auto inst = gen_ic(7, rng);
        if (!is_solvable(inst)) continue;
        ++seen;
        auto s = enumerate_solutions(inst);
        int fixed = 0;
        for (auto [a, b] : s.stable_pairs) fixed += a == b;
        EXPECT_EQ(fixed, 1);
        std::set<std::pair<int, int>> pairs(s.stable_pairs.begin(), s.stable_pairs.end());
        EXPECT_EQ(pairs, oracle_pairs(oracle::rows_of(inst)));
    }
    EXPECT_GT(seen, 0);
}

TEST(Budget, Exhaustion) {
    auto inst = generate_trial(Culture{}, 40, 3, 0);
    EnumOptions tiny;
    tiny.node_budget = 1;
    auto r = enum_all_partitions(inst, tiny);
    EXPECT_TRUE(r.budget_exhausted);
    auto full = enum_all_partitions(inst);
    EXPECT_FALSE(full.budget_exhausted);
    for (const auto& p : r.items) EXPECT_TRUE(std::binary_search(full.items.begin(), full.items.end(), p));
}
