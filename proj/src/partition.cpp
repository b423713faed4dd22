#include "srkit/partition.hpp"

#include "table.hpp"

namespace srkit {

Partition stable_partition(const Instance& inst) {
    detail::Table t{detail::PrefView(inst)};
    t.reset();
    auto emptied = t.phase1();
    if (emptied.size() > 1)
        throw Error(ErrorCode::VerificationFailed, "proposal phase left more than one agent unmatched");
    t.shrink_to_pairs();
    return Partition(t.firsts());
}

PartitionEngine::PartitionEngine(const Instance& inst, bool verify) : inst_(&inst), verify_(verify) {}

void PartitionEngine::add_agent() {
    if (done()) throw Error(ErrorCode::InvalidArgument, "all agents already inserted");
    ++k_;
    if (k_ == 1) {
        current_ = Partition::identity(1);
        return;
    }
    // Re-solve the prefix; a stable partition of the k-prefix need not
    // extend to one of the (k+1)-prefix by local repairs alone.
    Instance sub = k_ == inst_->n() ? *inst_ : inst_->prefix(k_);
    current_ = stable_partition(sub);
    if (verify_ && !is_stable_partition(sub, current_))
        throw Error(ErrorCode::VerificationFailed, "prefix partition of size " + std::to_string(k_) + " is not stable");
}

bool has_long_odd_cycle(const Partition& p) {
    for (const auto& c : cycles_of(p))
        if (c.odd() && c.length() >= 3) return true;
    return false;
}

bool is_solvable(const Instance& inst) { return !has_long_odd_cycle(stable_partition(inst)); }

std::optional<Matching> solve(const Instance& inst) {
    Partition p = stable_partition(inst);
    if (has_long_odd_cycle(p)) return std::nullopt;
    Matching m(inst.n());
    for (const auto& c : cycles_of(p))
        for (int t = 0; t + 1 < c.length(); t += 2) m.match(c.agents[t], c.agents[t + 1]);
    return m;
}

std::vector<Transpositions> even_cycle_decompositions(const Instance& inst, const Cycle& c) {
    const int k = c.length();
    if (k < 4 || k % 2 != 0)
        throw Error(ErrorCode::NotEvenCycle, "cycle of length " + std::to_string(k) + " has no proper decomposition");
    for (AgentId a : c.agents)
        if (a < 0 || a >= inst.n()) throw Error(ErrorCode::InvalidArgument, "cycle agent out of range");
    Transpositions a, b;
    for (int t = 0; t < k; t += 2) {
        a.emplace_back(c.agents[t], c.agents[t + 1]);
        b.emplace_back(c.agents[t + 1], c.agents[(t + 2) % k]);
    }
    return {a, b};
}

Partition substitute(const Partition& p, const Transpositions& pairs) {
    std::vector<AgentId> succ = p.succs();
    for (auto [x, y] : pairs) {
        succ[x] = y;
        succ[y] = x;
    }
    return Partition(std::move(succ));
}

} // namespace srkit
