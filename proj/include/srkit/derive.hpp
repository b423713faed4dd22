#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "srkit/core.hpp"

namespace srkit {

struct CycleStats {
    int n = 0;
    int q = 0;                     // odd cycles, 1-cycles included
    std::vector<int> odd_lengths;  // ascending
    int n_odd = 0;
    bool has_fixed_point = false;
    std::map<int, int> per_length;  // odd length -> count
    int even_cycles = 0;
    int long_even_cycles = 0;  // length >= 4
};

struct AlphaRatio {
    int max_stable_size = 0;
    int max_matching_size = 0;
    std::int64_t num = 1, den = 1;  // reduced

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// Weights in half units: 2 is a full edge, 1 a half edge.
struct HalfMatching {
    int n = 0;
    std::map<std::pair<AgentId, AgentId>, int> halves;  // keys ordered (min, max)
    std::vector<AgentId> self_loops;                    // fixed points, weight 1

    double weight(AgentId a, AgentId b) const;
    double total(AgentId a) const;
};

// Splits even cycles of length >= 4 into transpositions.
Partition reduce(const Instance& inst, const Partition& p);
// Drops the minimum agent of each odd cycle and pairs the rest.
Matching max_stable_matching(const Instance& inst, const Partition& p);
HalfMatching half_matching(const Partition& p);
CycleStats cycle_stats(const Partition& p);
AlphaRatio alpha(const Instance& inst, const Partition& p);
AlphaRatio alpha_from_stats(const CycleStats& s);

// {"q":..,"odd_lengths":[..],"n_odd":..,"alpha":"p/q"}
std::string stats_to_json(const CycleStats& s, const AlphaRatio& a);

} // namespace srkit
