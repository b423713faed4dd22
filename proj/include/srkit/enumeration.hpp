#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "srkit/core.hpp"

namespace srkit {

struct EnumOptions {
    std::uint64_t node_budget = 100'000'000;
    // Rotation-elimination check that prunes branches with no solution.
    bool probe = true;
};

template <class T>
struct EnumResult {
    std::vector<T> items;  // sorted, distinct
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
};

// Oracles: exhaustive search, guarded by n.
std::vector<Matching> brute_all_matchings(const Instance& inst);    // n <= 12
std::vector<Partition> brute_all_partitions(const Instance& inst);  // n <= 8

// Throws Unsolvable if the instance has no stable matching.
EnumResult<Matching> enum_stable_matchings(const Instance& inst, const EnumOptions& opt = {});
EnumResult<Partition> enum_reduced_partitions(const Instance& inst, const EnumOptions& opt = {});
EnumResult<Partition> enum_all_partitions(const Instance& inst, const EnumOptions& opt = {});

struct SolutionSets {
    int n = 0;
    bool solvable = false;
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
    std::vector<Matching> matchings;
    std::vector<Partition> reduced_partitions;
    std::vector<Partition> all_partitions;
    std::vector<Cycle> stable_cycles;
    std::vector<Cycle> reduced_stable_cycles;
    // (i, j) with i < j; a solvable odd instance adds (f, f) for its fixed point
    std::vector<std::pair<AgentId, AgentId>> stable_pairs;
};

// Fills the three solution sets from one shared budget, then collects.
SolutionSets enumerate_solutions(const Instance& inst, const EnumOptions& opt = {});
SolutionSets collect_cycles_and_pairs(SolutionSets sets);

} // namespace srkit
