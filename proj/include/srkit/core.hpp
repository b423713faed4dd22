#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "srkit/error.hpp"

namespace srkit {

using AgentId = int;

// Complete strict preferences over n agents. prefs are stored flat as
// 16-bit ids, so n is capped at kMaxAgents.
class Instance {
public:
    static constexpr int kMaxAgents = 65535;

    Instance() = default;

    // Validates rows; throws TooSmall, BadLength, RowNotPermutation.
    static Instance from_flat(int n, std::vector<std::uint16_t> prefs);

    int n() const { return n_; }
    std::span<const std::uint16_t> row(AgentId i) const {
        return {prefs_.data() + static_cast<std::size_t>(i) * (n_ - 1),
                static_cast<std::size_t>(n_ - 1)};
    }
    AgentId pref(AgentId i, int k) const { return prefs_[static_cast<std::size_t>(i) * (n_ - 1) + k]; }

    // 0-based list position; pos(i, i) == n - 1, below every real agent.
    int pos(AgentId i, AgentId j) const { return pos_[static_cast<std::size_t>(i) * n_ + j]; }
    // 1-based rank; rank(i, i) == n is the self sentinel.
    int rank(AgentId i, AgentId j) const { return pos(i, j) + 1; }
    // a strictly better than b for i (self is worst)
    bool prefers(AgentId i, AgentId a, AgentId b) const { return pos(i, a) < pos(i, b); }

    const std::vector<std::uint16_t>& flat_prefs() const { return prefs_; }
    const std::vector<std::uint16_t>& flat_pos() const { return pos_; }

    // First k agents with each row restricted to agents < k.
    Instance prefix(int k) const;

    bool operator==(const Instance& o) const { return n_ == o.n_ && prefs_ == o.prefs_; }

private:
    int n_ = 0;
    std::vector<std::uint16_t> prefs_;
    std::vector<std::uint16_t> pos_;
};

Instance build_instance(int n, const std::vector<std::vector<AgentId>>& rows);

class Matching {
public:
    static constexpr AgentId kUnmatched = -1;

    Matching() = default;
    explicit Matching(int n) : partner_(n, kUnmatched) {}
    // Throws InvalidArgument on an asymmetric or self-referencing array.
    explicit Matching(std::vector<AgentId> partner);

    int n() const { return static_cast<int>(partner_.size()); }
    AgentId partner(AgentId i) const { return partner_[i]; }
    bool matched(AgentId i) const { return partner_[i] != kUnmatched; }
    void match(AgentId i, AgentId j);
    int size() const;  // number of pairs
    // pairs (i, j) with i < j, sorted
    std::vector<std::pair<AgentId, AgentId>> pairs() const;
    const std::vector<AgentId>& partners() const { return partner_; }

    auto operator<=>(const Matching&) const = default;

private:
    std::vector<AgentId> partner_;
};

struct Cycle {
    std::vector<AgentId> agents;  // min-rotated, successor order

    int length() const { return static_cast<int>(agents.size()); }
    bool odd() const { return agents.size() % 2 == 1; }
    bool reduced() const { return agents.size() == 2 || odd(); }

    auto operator<=>(const Cycle&) const = default;
};

// Rotates so the minimum agent leads.
Cycle make_cycle(std::vector<AgentId> agents);

class Partition {
public:
    Partition() = default;
    // Throws InvalidArgument unless succ is a permutation of [0, n).
    explicit Partition(std::vector<AgentId> succ);
    static Partition from_cycles(int n, const std::vector<Cycle>& cycles);
    static Partition identity(int n);

    int n() const { return static_cast<int>(succ_.size()); }
    AgentId succ(AgentId i) const { return succ_[i]; }
    AgentId pred(AgentId i) const { return pred_[i]; }
    const std::vector<AgentId>& succs() const { return succ_; }

    auto operator<=>(const Partition& o) const { return succ_ <=> o.succ_; }
    bool operator==(const Partition& o) const { return succ_ == o.succ_; }

private:
    std::vector<AgentId> succ_;
    std::vector<AgentId> pred_;
};

// Canonical decomposition: each cycle min-rotated, cycles sorted by min agent.
std::vector<Cycle> cycles_of(const Partition& p);
// Rebuilds from the canonical cycles; equal to p for any valid p.
Partition canonical(const Partition& p);
bool is_reduced(const Partition& p);

// Transpositions for pairs, 1-cycles for unmatched agents.
Partition as_partition(const Matching& m);
// Throws InvalidArgument if p has a cycle longer than 2.
Matching as_matching(const Partition& p);

bool is_blocking_pair(const Instance& inst, const Matching& m, AgentId i, AgentId j);
bool is_stable_matching(const Instance& inst, const Matching& m);
bool is_stable_partition(const Instance& inst, const Partition& p);
// No blocking pair with both agents matched.
bool is_internally_stable(const Instance& inst, const Matching& m);

} // namespace srkit
