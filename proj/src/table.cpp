#include "table.hpp"

namespace srkit::detail {

void Table::reset() { reset(std::vector<int>(v_.n, v_.n - 2)); }

void Table::reset(const std::vector<int>& bound) {
    const int n = v_.n;
    left_.assign(n, 0);
    right_ = bound;
    sec_.assign(n, 1);
    held_.assign(n, -1);
    stamp_.assign(2 * n, 0);
    epoch_ = 0;
}

int Table::first(int a) {
    int& l = left_[a];
    while (l <= right_[a] && !mutual(a, v_.pref(a, l))) ++l;
    return l <= right_[a] ? v_.pref(a, l) : -1;
}

int Table::second(int a) {
    if (first(a) < 0) return -1;
    int& s = sec_[a];
    if (s <= left_[a]) s = left_[a] + 1;
    while (s <= right_[a] && !mutual(a, v_.pref(a, s))) ++s;
    return s <= right_[a] ? v_.pref(a, s) : -1;
}

int Table::last(int a) {
    int& r = right_[a];
    while (r >= left_[a] && !mutual(a, v_.pref(a, r))) --r;
    return r >= left_[a] ? v_.pref(a, r) : -1;
}

bool Table::has_third(int a) {
    if (second(a) < 0) return false;
    last(a);
    return right_[a] > sec_[a];
}

void Table::propose(std::vector<int>& free_agents, std::vector<int>* emptied) {
    while (!free_agents.empty()) {
        int x = free_agents.back();
        free_agents.pop_back();
        int y = first(x);
        if (y < 0) {
            if (emptied) emptied->push_back(x);
            continue;
        }
        // x is inside y's bound, so y strictly prefers x to its holder
        int h = held_[y];
        held_[y] = x;
        right_[y] = v_.pos(y, x);
        if (h >= 0) free_agents.push_back(h);
    }
}

std::vector<int> Table::phase1() {
    std::vector<int> free_agents(v_.n);
    for (int i = 0; i < v_.n; ++i) free_agents[i] = v_.n - 1 - i;
    std::vector<int> emptied;
    propose(free_agents, &emptied);
    return emptied;
}

void Table::truncate_after(int a, int b, std::vector<int>& free_agents) {
    int p = v_.pos(a, b);
    if (p >= right_[a]) return;
    right_[a] = p;
    int h = held_[a];
    if (h >= 0 && v_.pos(a, h) > p) {
        held_[a] = -1;
        free_agents.push_back(h);
    }
}

void Table::truncate_from(int a, int b, std::vector<int>& free_agents) {
    int p = v_.pos(a, b) - 1;
    if (p >= right_[a]) return;
    right_[a] = p;
    int h = held_[a];
    if (h >= 0 && v_.pos(a, h) > p) {
        held_[a] = -1;
        free_agents.push_back(h);
    }
}

bool Table::find_rotation(int start, std::vector<int>& cyc) {
    // x -> second(x) -> last of that, until an agent repeats
    const int n = v_.n;
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    cyc.clear();
    int x = start;
    for (;;) {
        stamp_[x] = epoch_;
        stamp_[n + x] = static_cast<int>(cyc.size());
        cyc.push_back(x);
        int y = second(x);
        if (y < 0) return false;
        int nx = last(y);
        if (stamp_[nx] == epoch_) {
            cyc.erase(cyc.begin(), cyc.begin() + stamp_[n + nx]);
            return true;
        }
        x = nx;
    }
}

void Table::eliminate(const std::vector<int>& cyc) {
    const std::size_t k = cyc.size();
    std::vector<int> ys(k);
    for (std::size_t i = 0; i < k; ++i) ys[i] = second(cyc[i]);
    for (std::size_t i = 0; i < k; ++i) {
        right_[ys[i]] = v_.pos(ys[i], cyc[i]);
        held_[ys[i]] = cyc[i];
    }
}

void Table::shrink_to_pairs() {
    std::vector<int> cyc;
    for (int p = 0; p < v_.n; ++p) {
        while (has_third(p)) {
            if (!find_rotation(p, cyc))
                throw Error(ErrorCode::VerificationFailed, "rotation search reached a short list");
            eliminate(cyc);
            for (int x : cyc)
                if (first(x) < 0) throw Error(ErrorCode::VerificationFailed, "rotation emptied a list");
        }
    }
}

bool Table::reduce_to_singletons(const std::vector<int>& agents) {
    std::vector<int> cyc;
    for (int p : agents) {
        while (second(p) >= 0) {
            if (!find_rotation(p, cyc))
                throw Error(ErrorCode::VerificationFailed, "rotation search reached a short list");
            eliminate(cyc);
            for (int x : cyc)
                if (first(x) < 0) return false;
        }
        if (first(p) < 0) return false;
    }
    return true;
}

std::vector<AgentId> Table::firsts() {
    std::vector<AgentId> succ(v_.n);
    for (int a = 0; a < v_.n; ++a) {
        int f = first(a);
        succ[a] = f < 0 ? a : f;
    }
    return succ;
}

} // namespace srkit::detail
