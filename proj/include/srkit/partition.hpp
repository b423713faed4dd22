#pragma once

#include <optional>
#include <vector>

#include "srkit/core.hpp"

namespace srkit {

// A stable partition; always exists. Deterministic per instance.
Partition stable_partition(const Instance& inst);

// Grows a stable partition one agent at a time over id-ordered prefixes.
class PartitionEngine {
public:
    explicit PartitionEngine(const Instance& inst, bool verify = false);

    int processed() const { return k_; }
    bool done() const { return k_ == inst_->n(); }
    // Inserts agent processed(); throws VerificationFailed in verify mode
    // if the prefix partition is not stable.
    void add_agent();
    // Partition over agents [0, processed()).
    const Partition& partition() const { return current_; }

private:
    const Instance* inst_;
    bool verify_;
    int k_ = 0;
    Partition current_;
};

bool is_solvable(const Instance& inst);
bool has_long_odd_cycle(const Partition& p);

// Stable matching when one exists; (c1,c2)-aligned split of even cycles.
std::optional<Matching> solve(const Instance& inst);

using Transpositions = std::vector<std::pair<AgentId, AgentId>>;
// The two adjacent pairings of an even cycle of length >= 4.
std::vector<Transpositions> even_cycle_decompositions(const Instance& inst, const Cycle& c);
// Rewires the agents of `pairs` into transpositions.
Partition substitute(const Partition& p, const Transpositions& pairs);

} // namespace srkit
