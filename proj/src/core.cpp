#include "srkit/core.hpp"

#include <algorithm>
#include <string>

namespace srkit {

const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::RowNotPermutation: return "RowNotPermutation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::OddNotSupported: return "OddNotSupported";
    case ErrorCode::NotEvenCycle: return "NotEvenCycle";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Instance Instance::from_flat(int n, std::vector<std::uint16_t> prefs) {
    if (n < 2)
        throw Error(ErrorCode::TooSmall, "instance needs at least 2 agents, got " + std::to_string(n));
    if (n > kMaxAgents)
        throw Error(ErrorCode::InvalidArgument, "too many agents: " + std::to_string(n));
    const std::size_t w = static_cast<std::size_t>(n - 1);
    if (prefs.size() != w * n)
        throw Error(ErrorCode::BadLength, "preference table has wrong size");

    Instance inst;
    inst.n_ = n;
    inst.pos_.assign(static_cast<std::size_t>(n) * n, 0xffff);
    for (int i = 0; i < n; ++i) {
        std::uint16_t* pos_row = inst.pos_.data() + static_cast<std::size_t>(i) * n;
        for (std::size_t k = 0; k < w; ++k) {
            int j = prefs[i * w + k];
            if (j >= n || j == i || pos_row[j] != 0xffff)
                throw Error(ErrorCode::RowNotPermutation,
                            "row " + std::to_string(i + 1) + " is not a permutation of the other agents");
            pos_row[j] = static_cast<std::uint16_t>(k);
        }
        pos_row[i] = static_cast<std::uint16_t>(n - 1);
    }
    inst.prefs_ = std::move(prefs);
    return inst;
}

Instance build_instance(int n, const std::vector<std::vector<AgentId>>& rows) {
    if (n < 2)
        throw Error(ErrorCode::TooSmall, "instance needs at least 2 agents, got " + std::to_string(n));
    if (static_cast<int>(rows.size()) != n)
        throw Error(ErrorCode::BadLength, "expected " + std::to_string(n) + " rows");
    std::vector<std::uint16_t> flat;
    flat.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n - 1)
            throw Error(ErrorCode::BadLength, "row " + std::to_string(i + 1) + " has length " +
                                                  std::to_string(rows[i].size()) + ", expected " +
                                                  std::to_string(n - 1));
        for (AgentId j : rows[i]) {
            if (j < 0 || j >= n)
                throw Error(ErrorCode::RowNotPermutation,
                            "row " + std::to_string(i + 1) + " contains out-of-range agent");
            flat.push_back(static_cast<std::uint16_t>(j));
        }
    }
    return Instance::from_flat(n, std::move(flat));
}

Instance Instance::prefix(int k) const {
    if (k < 2 || k > n_)
        throw Error(ErrorCode::InvalidArgument, "bad prefix length " + std::to_string(k));
    std::vector<std::uint16_t> flat;
    flat.reserve(static_cast<std::size_t>(k) * (k - 1));
    for (int i = 0; i < k; ++i)
        for (auto j : row(i))
            if (j < k) flat.push_back(j);
    return from_flat(k, std::move(flat));
}

Matching::Matching(std::vector<AgentId> partner) : partner_(std::move(partner)) {
    const int n = this->n();
    for (int i = 0; i < n; ++i) {
        AgentId j = partner_[i];
        if (j == kUnmatched) continue;
        if (j < 0 || j >= n || j == i || partner_[j] != i)
            throw Error(ErrorCode::InvalidArgument, "partner array is not a symmetric matching");
    }
}

void Matching::match(AgentId i, AgentId j) {
    if (i == j || matched(i) || matched(j))
        throw Error(ErrorCode::InvalidArgument, "cannot match agents " + std::to_string(i) + " and " +
                                                    std::to_string(j));
    partner_[i] = j;
    partner_[j] = i;
}

int Matching::size() const {
    int c = 0;
    for (AgentId p : partner_) c += p != kUnmatched;
    return c / 2;
}

std::vector<std::pair<AgentId, AgentId>> Matching::pairs() const {
    std::vector<std::pair<AgentId, AgentId>> out;
    for (int i = 0; i < n(); ++i)
        if (partner_[i] > i) out.emplace_back(i, partner_[i]);
    return out;
}

Cycle make_cycle(std::vector<AgentId> agents) {
    auto it = std::min_element(agents.begin(), agents.end());
    std::rotate(agents.begin(), it, agents.end());
    return Cycle{std::move(agents)};
}

Partition::Partition(std::vector<AgentId> succ) : succ_(std::move(succ)), pred_(succ_.size(), -1) {
    const int n = this->n();
    for (int i = 0; i < n; ++i) {
        AgentId s = succ_[i];
        if (s < 0 || s >= n || pred_[s] != -1)
            throw Error(ErrorCode::InvalidArgument, "successor array is not a permutation");
        pred_[s] = i;
    }
}

Partition Partition::from_cycles(int n, const std::vector<Cycle>& cycles) {
    std::vector<AgentId> succ(n, -1);
    for (const auto& c : cycles) {
        const int k = c.length();
        for (int t = 0; t < k; ++t) {
            AgentId a = c.agents[t];
            if (a < 0 || a >= n || succ[a] != -1)
                throw Error(ErrorCode::InvalidArgument, "cycles do not partition the agents");
            succ[a] = c.agents[(t + 1) % k];
        }
    }
    if (std::find(succ.begin(), succ.end(), -1) != succ.end())
        throw Error(ErrorCode::InvalidArgument, "cycles do not cover every agent");
    return Partition(std::move(succ));
}

Partition Partition::identity(int n) {
    std::vector<AgentId> succ(n);
    for (int i = 0; i < n; ++i) succ[i] = i;
    return Partition(std::move(succ));
}

std::vector<Cycle> cycles_of(const Partition& p) {
    // Scanning in id order visits each cycle first at its minimum agent,
    // so the cycles come out min-rotated and sorted.
    const int n = p.n();
    std::vector<char> seen(n, 0);
    std::vector<Cycle> out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        Cycle c;
        for (AgentId a = i; !seen[a]; a = p.succ(a)) {
            seen[a] = 1;
            c.agents.push_back(a);
        }
        out.push_back(std::move(c));
    }
    return out;
}

Partition canonical(const Partition& p) { return Partition::from_cycles(p.n(), cycles_of(p)); }

bool is_reduced(const Partition& p) {
    for (const auto& c : cycles_of(p))
        if (!c.reduced()) return false;
    return true;
}

Partition as_partition(const Matching& m) {
    std::vector<AgentId> succ(m.n());
    for (int i = 0; i < m.n(); ++i) succ[i] = m.matched(i) ? m.partner(i) : i;
    return Partition(std::move(succ));
}

Matching as_matching(const Partition& p) {
    Matching m(p.n());
    for (int i = 0; i < p.n(); ++i) {
        AgentId s = p.succ(i);
        if (s == i) continue;
        if (p.succ(s) != i)
            throw Error(ErrorCode::InvalidArgument, "partition has a cycle longer than 2");
        if (i < s) m.match(i, s);
    }
    return m;
}

bool is_blocking_pair(const Instance& inst, const Matching& m, AgentId i, AgentId j) {
    if (i == j || i < 0 || j < 0 || i >= inst.n() || j >= inst.n())
        throw Error(ErrorCode::InvalidArgument, "bad agent pair");
    bool i_wants = !m.matched(i) || inst.prefers(i, j, m.partner(i));
    bool j_wants = !m.matched(j) || inst.prefers(j, i, m.partner(j));
    return i_wants && j_wants;
}

namespace {

void check_size(const Instance& inst, int n) {
    if (inst.n() != n) throw Error(ErrorCode::InvalidArgument, "size mismatch between instance and solution");
}

// pos of the agent's current assignment; unmatched counts as self (worst).
std::vector<int> assignment_pos(const Instance& inst, const Matching& m) {
    std::vector<int> cur(inst.n());
    for (int i = 0; i < inst.n(); ++i) cur[i] = inst.pos(i, m.matched(i) ? m.partner(i) : i);
    return cur;
}

} // namespace

bool is_stable_matching(const Instance& inst, const Matching& m) {
    check_size(inst, m.n());
    const int n = inst.n();
    auto cur = assignment_pos(inst, m);
    // i only needs to look at agents above its current assignment.
    for (int i = 0; i < n; ++i) {
        auto row = inst.row(i);
        for (int k = 0; k < cur[i]; ++k) {
            int j = row[k];
            if (inst.pos(j, i) < cur[j]) return false;
        }
    }
    return true;
}

bool is_internally_stable(const Instance& inst, const Matching& m) {
    check_size(inst, m.n());
    auto cur = assignment_pos(inst, m);
    for (int i = 0; i < inst.n(); ++i) {
        if (!m.matched(i)) continue;
        auto row = inst.row(i);
        for (int k = 0; k < cur[i]; ++k) {
            int j = row[k];
            if (m.matched(j) && inst.pos(j, i) < cur[j]) return false;
        }
    }
    return true;
}

bool is_stable_partition(const Instance& inst, const Partition& p) {
    check_size(inst, p.n());
    const int n = inst.n();
    std::vector<int> pred_pos(n);
    for (int i = 0; i < n; ++i) {
        AgentId s = p.succ(i), q = p.pred(i);
        // T1; vacuous for 1-cycles and transpositions
        if (s != q && inst.pos(i, s) > inst.pos(i, q)) return false;
        pred_pos[i] = inst.pos(i, q);
    }
    // T2
    for (int i = 0; i < n; ++i) {
        auto row = inst.row(i);
        for (int k = 0; k < pred_pos[i]; ++k) {
            int j = row[k];
            if (inst.pos(j, i) < pred_pos[j]) return false;
        }
    }
    return true;
}

} // namespace srkit
