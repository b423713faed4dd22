#include "srkit/enumeration.hpp"

#include <algorithm>
#include <numeric>

#include "srkit/partition.hpp"
#include "table.hpp"

namespace srkit {

namespace {

template <class T>
void sort_unique(std::vector<T>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// Pairs the lowest open agent with each later open agent; with odd n one
// agent is chosen up front to stay single.
void pair_up(const Instance& inst, std::vector<AgentId>& partner, std::vector<char>& open, int remaining,
             std::vector<Matching>& out) {
    const int n = inst.n();
    if (remaining == 0) {
        Matching m(partner);
        if (is_stable_matching(inst, m)) out.push_back(std::move(m));
        return;
    }
    int a = 0;
    while (!open[a]) ++a;
    open[a] = 0;
    for (int b = a + 1; b < n; ++b) {
        if (!open[b]) continue;
        open[b] = 0;
        partner[a] = b;
        partner[b] = a;
        pair_up(inst, partner, open, remaining - 2, out);
        partner[a] = partner[b] = Matching::kUnmatched;
        open[b] = 1;
    }
    open[a] = 1;
}

struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;
    bool exhausted = false;

    bool step() {
        if (exhausted) return false;
        if (++used > limit) {
            exhausted = true;
            return false;
        }
        return true;
    }
};

// Reduced partitions are the invariant odd cycles plus a perfect stable
// matching of the remaining agents, each restricted to partners it ranks
// above any odd-cycle agent that would accept it.
class ReducedEnumerator {
public:
    ReducedEnumerator(const Instance& inst, const Partition& base, bool probe, Budget& budget)
        : inst_(inst), view_(inst), probe_(probe), budget_(budget), table_(view_) {
        const int n = inst.n();
        std::vector<int> bound(n, n - 2);
        std::vector<char> in_odd(n, 0);
        base_succ_ = base.succs();
        for (const auto& c : cycles_of(base))
            if (c.odd())
                for (AgentId a : c.agents) in_odd[a] = 1;
        for (int o = 0; o < n; ++o) {
            if (!in_odd[o]) continue;
            bound[o] = -1;
            const int pred_pos = inst.pos(o, base.pred(o));
            auto row = inst.row(o);
            for (int k = 0; k < pred_pos; ++k) {
                int a = row[k];
                if (!in_odd[a]) bound[a] = std::min(bound[a], inst.pos(a, o) - 1);
            }
        }
        for (int a = 0; a < n; ++a)
            if (!in_odd[a]) rest_.push_back(a);
        table_.reset(bound);
    }

    void run(std::vector<Partition>& out) {
        out_ = &out;
        std::vector<int> free_agents(rest_.rbegin(), rest_.rend());
        std::vector<int> emptied;
        table_.propose(free_agents, &emptied);
        if (!emptied.empty() || !all_nonempty(table_)) return;
        rec(table_);
    }

private:
    bool all_nonempty(detail::Table& t) {
        for (int a : rest_)
            if (t.first(a) < 0) return false;
        return true;
    }

    bool settle(detail::Table& t, std::vector<int>& free_agents) {
        std::vector<int> emptied;
        t.propose(free_agents, &emptied);
        return emptied.empty() && all_nonempty(t);
    }

    void rec(detail::Table& t) {
        if (!budget_.step()) return;
        if (probe_) {
            detail::Table probe = t;
            if (!probe.reduce_to_singletons(rest_)) return;
        }
        int x = -1;
        for (int a : rest_)
            if (t.second(a) >= 0) {
                x = a;
                break;
            }
        if (x < 0) {
            leaf(t);
            return;
        }
        const int y = t.first(x);
        {
            // x keeps y: everyone y ranks above x must do better than y
            detail::Table a = t;
            std::vector<int> free_agents;
            auto row = inst_.row(y);
            for (int k = 0; k < inst_.pos(y, x); ++k) {
                int w = row[k];
                if (a.mutual(y, w)) a.truncate_from(w, y, free_agents);
            }
            a.truncate_after(x, y, free_agents);
            // y now has x first; make that proposal explicit
            std::erase(free_agents, y);
            a.hold(x, y);
            if (settle(a, free_agents)) rec(a);
        }
        if (budget_.exhausted) return;
        {
            // x and y split: y must do better than x
            detail::Table b = t;
            std::vector<int> free_agents;
            b.truncate_from(y, x, free_agents);
            if (settle(b, free_agents)) rec(b);
        }
    }

    void leaf(detail::Table& t) {
        std::vector<AgentId> succ = base_succ_;
        for (int a : rest_) succ[a] = t.first(a);
        Partition p(std::move(succ));
        if (!is_stable_partition(inst_, p))
            throw Error(ErrorCode::VerificationFailed, "enumerated partition failed the stability check");
        out_->push_back(std::move(p));
    }

    const Instance& inst_;
    detail::PrefView view_;
    bool probe_;
    Budget& budget_;
    detail::Table table_;
    std::vector<AgentId> base_succ_;
    std::vector<int> rest_;
    std::vector<Partition>* out_ = nullptr;
};

// A merge rewires transpositions {u_i, v_{i-1}} of a reduced partition into
// the even cycle (u_1 v_1 u_2 v_2 ... u_k v_k).
struct Merge {
    std::vector<AgentId> cycle;
};

class MergeFinder {
public:
    MergeFinder(const Instance& inst, const Partition& r, Budget& budget) : inst_(inst), r_(r), budget_(budget) {
        const int n = inst.n();
        partner_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            if (r.succ(a) != a && r.succ(r.succ(a)) == a) partner_[a] = r.succ(a);
        arcs_.assign(n, {});
        for (int u = 0; u < n; ++u) {
            if (partner_[u] < 0) continue;
            const int pu = inst.pos(u, partner_[u]);
            auto row = inst.row(u);
            for (int k = 0; k < pu; ++k) {
                int v = row[k];
                if (partner_[v] < 0) continue;
                if (inst.prefers(v, partner_[v], u)) arcs_[u].push_back(partner_[v]);
            }
        }
    }

    std::vector<Merge> stable_merges() {
        const int n = inst_.n();
        used_.assign(n, 0);
        pred_.resize(n);
        for (int a = 0; a < n; ++a) pred_[a] = r_.pred(a);
        for (int s = 0; s < n && !budget_.exhausted; ++s) {
            if (partner_[s] < 0) continue;
            start_ = s;
            path_.assign(1, s);
            mark(s, 1);
            dfs(s);
            mark(s, 0);
        }
        return std::move(found_);
    }

private:
    void mark(int u, char v) {
        used_[u] = v;
        used_[partner_[u]] = v;
    }

    void dfs(int u) {
        for (int w : arcs_[u]) {
            if (!budget_.step()) return;
            if (w == start_) {
                if (path_.size() >= 2) consider();
                continue;
            }
            // start_ is the smallest u on the cycle, so each cycle is seen once
            if (w < start_ || used_[w]) continue;
            const int v = partner_[w];
            if (blocked(v, u)) continue;
            pred_[v] = u;
            path_.push_back(w);
            mark(w, 1);
            dfs(w);
            mark(w, 0);
            path_.pop_back();
            pred_[v] = w;
            if (budget_.exhausted) return;
        }
    }

    // Predecessors only get worse along a path, so a blocker found for v
    // with predecessor u survives every extension.
    bool blocked(int v, int u) const {
        const int pu = inst_.pos(v, u);
        auto row = inst_.row(v);
        for (int k = 0; k < pu; ++k) {
            int y = row[k];
            if (inst_.prefers(y, v, pred_[y])) return true;
        }
        return false;
    }

    void consider() {
        const std::size_t k = path_.size();
        Merge m;
        for (std::size_t i = 0; i < k; ++i) {
            m.cycle.push_back(path_[i]);
            m.cycle.push_back(partner_[path_[(i + 1) % k]]);
        }
        std::vector<AgentId> succ = r_.succs();
        apply(succ, m);
        if (is_stable_partition(inst_, Partition(std::move(succ)))) found_.push_back(std::move(m));
    }

public:
    static void apply(std::vector<AgentId>& succ, const Merge& m) {
        const std::size_t k = m.cycle.size();
        for (std::size_t i = 0; i < k; ++i) succ[m.cycle[i]] = m.cycle[(i + 1) % k];
    }

private:
    const Instance& inst_;
    const Partition& r_;
    Budget& budget_;
    std::vector<AgentId> partner_;
    std::vector<std::vector<int>> arcs_;
    std::vector<char> used_;
    std::vector<int> path_;
    std::vector<AgentId> pred_;
    int start_ = 0;
    std::vector<Merge> found_;
};

// Every subset of a stable combination is stable, so combinations grow
// one merge at a time and stop at the first failure.
void combine(const Instance& inst, const std::vector<Merge>& merges, std::size_t from, std::vector<AgentId>& succ,
             std::vector<char>& busy, Budget& budget, std::vector<Partition>& out) {
    for (std::size_t i = from; i < merges.size(); ++i) {
        if (!budget.step()) return;
        const auto& m = merges[i];
        if (std::any_of(m.cycle.begin(), m.cycle.end(), [&](AgentId a) { return busy[a]; })) continue;
        std::vector<AgentId> saved = succ;
        MergeFinder::apply(succ, m);
        Partition p(succ);
        if (is_stable_partition(inst, p)) {
            out.push_back(std::move(p));
            for (AgentId a : m.cycle) busy[a] = 1;
            combine(inst, merges, i + 1, succ, busy, budget, out);
            for (AgentId a : m.cycle) busy[a] = 0;
        }
        succ = std::move(saved);
    }
}

std::vector<Partition> reduced_with(const Instance& inst, const Partition& base, const EnumOptions& opt,
                                    Budget& budget) {
    std::vector<Partition> out;
    ReducedEnumerator(inst, base, opt.probe, budget).run(out);
    sort_unique(out);
    return out;
}

std::vector<Partition> all_from_reduced(const Instance& inst, const std::vector<Partition>& reduced,
                                        Budget& budget) {
    std::vector<Partition> out = reduced;
    for (const auto& r : reduced) {
        if (budget.exhausted) break;
        auto merges = MergeFinder(inst, r, budget).stable_merges();
        std::vector<AgentId> succ = r.succs();
        std::vector<char> busy(inst.n(), 0);
        combine(inst, merges, 0, succ, busy, budget, out);
    }
    sort_unique(out);
    return out;
}

std::vector<Matching> to_matchings(const std::vector<Partition>& ps) {
    std::vector<Matching> ms;
    ms.reserve(ps.size());
    for (const auto& p : ps) ms.push_back(as_matching(p));
    sort_unique(ms);
    return ms;
}

} // namespace

std::vector<Matching> brute_all_matchings(const Instance& inst) {
    const int n = inst.n();
    if (n > 12) throw Error(ErrorCode::TooLargeForOracle, "matching oracle limited to n <= 12");
    std::vector<Matching> out;
    std::vector<AgentId> partner(n, Matching::kUnmatched);
    std::vector<char> open(n, 1);
    if (n % 2 == 0) {
        pair_up(inst, partner, open, n, out);
    } else {
        for (int single = 0; single < n; ++single) {
            open[single] = 0;
            pair_up(inst, partner, open, n - 1, out);
            open[single] = 1;
        }
    }
    sort_unique(out);
    return out;
}

std::vector<Partition> brute_all_partitions(const Instance& inst) {
    const int n = inst.n();
    if (n > 8) throw Error(ErrorCode::TooLargeForOracle, "partition oracle limited to n <= 8");
    std::vector<AgentId> succ(n);
    std::iota(succ.begin(), succ.end(), 0);
    std::vector<Partition> out;
    do {
        Partition p(succ);
        if (is_stable_partition(inst, p)) out.push_back(std::move(p));
    } while (std::next_permutation(succ.begin(), succ.end()));
    return out;  // next_permutation order is already sorted
}

EnumResult<Matching> enum_stable_matchings(const Instance& inst, const EnumOptions& opt) {
    Partition base = stable_partition(inst);
    if (has_long_odd_cycle(base)) throw Error(ErrorCode::Unsolvable, "instance admits no stable matching");
    Budget budget{opt.node_budget};
    EnumResult<Matching> r;
    r.items = to_matchings(reduced_with(inst, base, opt, budget));
    r.budget_exhausted = budget.exhausted;
    r.nodes = budget.used;
    return r;
}

EnumResult<Partition> enum_reduced_partitions(const Instance& inst, const EnumOptions& opt) {
    Budget budget{opt.node_budget};
    EnumResult<Partition> r;
    r.items = reduced_with(inst, stable_partition(inst), opt, budget);
    r.budget_exhausted = budget.exhausted;
    r.nodes = budget.used;
    return r;
}

EnumResult<Partition> enum_all_partitions(const Instance& inst, const EnumOptions& opt) {
    Budget budget{opt.node_budget};
    EnumResult<Partition> r;
    auto reduced = reduced_with(inst, stable_partition(inst), opt, budget);
    r.items = all_from_reduced(inst, reduced, budget);
    r.budget_exhausted = budget.exhausted;
    r.nodes = budget.used;
    return r;
}

SolutionSets enumerate_solutions(const Instance& inst, const EnumOptions& opt) {
    SolutionSets s;
    s.n = inst.n();
    Budget budget{opt.node_budget};
    Partition base = stable_partition(inst);
    s.solvable = !has_long_odd_cycle(base);
    s.reduced_partitions = reduced_with(inst, base, opt, budget);
    s.all_partitions = all_from_reduced(inst, s.reduced_partitions, budget);
    if (s.solvable) s.matchings = to_matchings(s.reduced_partitions);
    s.budget_exhausted = budget.exhausted;
    s.nodes = budget.used;
    return collect_cycles_and_pairs(std::move(s));
}

SolutionSets collect_cycles_and_pairs(SolutionSets s) {
    s.stable_cycles.clear();
    s.reduced_stable_cycles.clear();
    s.stable_pairs.clear();
    for (const auto& p : s.all_partitions)
        for (auto& c : cycles_of(p)) s.stable_cycles.push_back(std::move(c));
    for (const auto& p : s.reduced_partitions)
        for (auto& c : cycles_of(p)) s.reduced_stable_cycles.push_back(std::move(c));
    sort_unique(s.stable_cycles);
    sort_unique(s.reduced_stable_cycles);
    for (const auto& m : s.matchings) {
        for (auto pr : m.pairs()) s.stable_pairs.push_back(pr);
        // the fixed point is the same in every stable matching
        for (int a = 0; a < m.n(); ++a)
            if (!m.matched(a)) s.stable_pairs.emplace_back(a, a);
    }
    sort_unique(s.stable_pairs);
    return s;
}

} // namespace srkit
