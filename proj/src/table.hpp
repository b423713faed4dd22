#pragma once

// Reduced preference table shared by the partition engine and the
// enumerators. A pair {a, b} is in the table iff each lies within the
// other's right bound; left and sec are lazily advanced caches.

#include <cstdint>
#include <vector>

#include "srkit/core.hpp"

namespace srkit::detail {

struct PrefView {
    int n = 0;
    const std::uint16_t* prefs = nullptr;
    const std::uint16_t* posv = nullptr;

    explicit PrefView(const Instance& inst)
        : n(inst.n()), prefs(inst.flat_prefs().data()), posv(inst.flat_pos().data()) {}
    PrefView(int n_, const std::uint16_t* p, const std::uint16_t* q) : n(n_), prefs(p), posv(q) {}

    int pref(int a, int k) const { return prefs[static_cast<std::size_t>(a) * (n - 1) + k]; }
    int pos(int a, int b) const { return posv[static_cast<std::size_t>(a) * n + b]; }
};

class Table {
public:
    explicit Table(PrefView v) : v_(v) {}

    // Full lists for every agent.
    void reset();
    // right[a] = bound[a]; -1 removes a from the table.
    void reset(const std::vector<int>& bound);

    bool mutual(int a, int b) const { return v_.pos(a, b) <= right_[a] && v_.pos(b, a) <= right_[b]; }
    int first(int a);   // -1 when a's list is empty
    int second(int a);  // -1 when fewer than two entries
    int last(int a);
    bool has_third(int a);

    // Proposal cascade from the agents in `free_agents` (consumed LIFO).
    // Agents whose lists run out are reported through `emptied`.
    void propose(std::vector<int>& free_agents, std::vector<int>* emptied);

    // Proposal phase from scratch over all agents, lowest id first.
    // Returns the agents left with empty lists.
    std::vector<int> phase1();

    // Eliminates rotations until no list has three or more entries.
    // Throws VerificationFailed if a list empties.
    void shrink_to_pairs();

    // Lazy-rotation variant used as a feasibility probe: eliminates
    // rotations until every list is a singleton. False if one empties.
    bool reduce_to_singletons(const std::vector<int>& agents);

    // succ[a] = first(a), or a itself for an empty list.
    std::vector<AgentId> firsts();

    int n() const { return v_.n; }
    const PrefView& view() const { return v_; }

    // Restricts a to entries up to and including b; releases the holder.
    void truncate_after(int a, int b, std::vector<int>& free_agents);
    // Deletes b and everything after it from a's list; releases the holder.
    void truncate_from(int a, int b, std::vector<int>& free_agents);
    void hold(int a, int b) { held_[a] = b; }

private:
    bool find_rotation(int start, std::vector<int>& cyc);
    void eliminate(const std::vector<int>& cyc);

    PrefView v_;
    std::vector<int> left_, right_, sec_, held_;
    std::vector<int> stamp_;
    int epoch_ = 0;
};

} // namespace srkit::detail
