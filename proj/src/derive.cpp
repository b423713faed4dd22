#include "srkit/derive.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "srkit/partition.hpp"

namespace srkit {

double HalfMatching::weight(AgentId a, AgentId b) const {
    if (a == b) return std::count(self_loops.begin(), self_loops.end(), a) ? 1.0 : 0.0;
    auto it = halves.find({std::min(a, b), std::max(a, b)});
    return it == halves.end() ? 0.0 : it->second / 2.0;
}

double HalfMatching::total(AgentId a) const {
    int h = 0;
    for (const auto& [k, w] : halves)
        if (k.first == a || k.second == a) h += w;
    if (std::count(self_loops.begin(), self_loops.end(), a)) h += 2;
    return h / 2.0;
}

Partition reduce(const Instance& inst, const Partition& p) {
    Partition out = p;
    for (const auto& c : cycles_of(p)) {
        if (c.reduced()) continue;
        auto options = even_cycle_decompositions(inst, c);
        Partition cand = substitute(out, options[0]);
        if (!is_stable_partition(inst, cand)) cand = substitute(out, options[1]);
        out = std::move(cand);
    }
    return out;
}

Matching max_stable_matching(const Instance& inst, const Partition& p) {
    if (inst.n() != p.n()) throw Error(ErrorCode::InvalidArgument, "size mismatch between instance and partition");
    Matching m(p.n());
    for (const auto& c : cycles_of(p)) {
        // canonical cycles lead with their minimum agent
        int start = c.odd() ? 1 : 0;
        for (int t = start; t + 1 < c.length(); t += 2) m.match(c.agents[t], c.agents[t + 1]);
    }
    return m;
}

HalfMatching half_matching(const Partition& p) {
    HalfMatching h;
    h.n = p.n();
    for (const auto& c : cycles_of(p)) {
        const int k = c.length();
        if (k == 1) {
            h.self_loops.push_back(c.agents[0]);
        } else if (k == 2) {
            h.halves[{c.agents[0], c.agents[1]}] = 2;
        } else {
            for (int t = 0; t < k; ++t) {
                AgentId a = c.agents[t], b = c.agents[(t + 1) % k];
                h.halves[{std::min(a, b), std::max(a, b)}] = 1;
            }
        }
    }
    return h;
}

CycleStats cycle_stats(const Partition& p) {
    CycleStats s;
    s.n = p.n();
    for (const auto& c : cycles_of(p)) {
        const int k = c.length();
        if (c.odd()) {
            ++s.q;
            s.odd_lengths.push_back(k);
            s.n_odd += k;
            ++s.per_length[k];
            if (k == 1) s.has_fixed_point = true;
        } else {
            ++s.even_cycles;
            if (k >= 4) ++s.long_even_cycles;
        }
    }
    std::sort(s.odd_lengths.begin(), s.odd_lengths.end());
    return s;
}

AlphaRatio alpha_from_stats(const CycleStats& s) {
    AlphaRatio a;
    a.max_stable_size = (s.n - s.q) / 2;
    a.max_matching_size = s.n / 2;
    std::int64_t g = std::gcd<std::int64_t, std::int64_t>(a.max_stable_size, a.max_matching_size);
    if (g == 0) g = 1;
    a.num = a.max_stable_size / g;
    a.den = a.max_matching_size / g;
    return a;
}

AlphaRatio alpha(const Instance& inst, const Partition& p) {
    if (inst.n() != p.n()) throw Error(ErrorCode::InvalidArgument, "size mismatch between instance and partition");
    return alpha_from_stats(cycle_stats(p));
}

std::string stats_to_json(const CycleStats& s, const AlphaRatio& a) {
    nlohmann::ordered_json j;
    j["q"] = s.q;
    j["odd_lengths"] = s.odd_lengths;
    j["n_odd"] = s.n_odd;
    j["alpha"] = a.str();
    return j.dump();
}

} // namespace srkit
