#include "srkit/generators.hpp"

#include <algorithm>
#include <numeric>

namespace srkit {

namespace {

void check_n(int n) {
    if (n < 2) throw Error(ErrorCode::TooSmall, "instance needs at least 2 agents, got " + std::to_string(n));
    if (n > Instance::kMaxAgents) throw Error(ErrorCode::InvalidArgument, "too many agents");
}

std::vector<AgentId> random_labels(int n, Rng& rng) {
    std::vector<AgentId> label(n);
    std::iota(label.begin(), label.end(), 0);
    rng.shuffle(std::span<AgentId>(label));
    return label;
}

std::vector<Point> random_points(int n, Rng& rng) {
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    return pts;
}

// Rows sorted by score(i, j) ascending, ties by id.
template <class Score>
Instance sorted_instance(int n, Score score) {
    const std::size_t w = n - 1;
    std::vector<std::uint16_t> flat(w * n);
    std::vector<std::pair<double, int>> keyed(w);
    for (int i = 0; i < n; ++i) {
        std::size_t k = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) keyed[k++] = {score(i, j), j};
        std::sort(keyed.begin(), keyed.end());
        for (k = 0; k < w; ++k) flat[i * w + k] = static_cast<std::uint16_t>(keyed[k].second);
    }
    return Instance::from_flat(n, std::move(flat));
}

} // namespace

std::string culture_name(CultureTag tag) {
    switch (tag) {
    case CultureTag::IC: return "ic";
    case CultureTag::TwoIC: return "2ic";
    case CultureTag::Symmetric: return "symmetric";
    case CultureTag::Asymmetric: return "asymmetric";
    case CultureTag::Euclidean: return "euclidean";
    case CultureTag::Attributes: return "attributes";
    case CultureTag::MallowsEuclidean: return "mallows-euclidean";
    }
    return "?";
}

CultureTag parse_culture(const std::string& name) {
    for (CultureTag t : all_cultures())
        if (culture_name(t) == name) return t;
    throw Error(ErrorCode::InvalidArgument, "unknown culture '" + name + "'");
}

const std::vector<CultureTag>& all_cultures() {
    static const std::vector<CultureTag> tags = {CultureTag::IC,         CultureTag::TwoIC,
                                                 CultureTag::Symmetric,  CultureTag::Asymmetric,
                                                 CultureTag::Euclidean,  CultureTag::Attributes,
                                                 CultureTag::MallowsEuclidean};
    return tags;
}

Instance gen_ic(int n, Rng& rng) {
    check_n(n);
    const std::size_t w = n - 1;
    std::vector<std::uint16_t> flat(w * n);
    for (int i = 0; i < n; ++i) {
        std::span<std::uint16_t> row(flat.data() + i * w, w);
        std::size_t k = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) row[k++] = static_cast<std::uint16_t>(j);
        rng.shuffle(row);
    }
    return Instance::from_flat(n, std::move(flat));
}

Instance gen_2ic(int n, Rng& rng) {
    check_n(n);
    const int split = (n + 1) / 2;  // group A is [0, split)
    const std::size_t w = n - 1;
    std::vector<std::uint16_t> flat(w * n);
    for (int i = 0; i < n; ++i) {
        const bool in_a = i < split;
        const int own_lo = in_a ? 0 : split, own_hi = in_a ? split : n;
        std::uint16_t* row = flat.data() + i * w;
        std::size_t k = 0;
        for (int j = own_lo; j < own_hi; ++j)
            if (j != i) row[k++] = static_cast<std::uint16_t>(j);
        const std::size_t own = k;
        for (int j = 0; j < n; ++j)
            if (j < own_lo || j >= own_hi) row[k++] = static_cast<std::uint16_t>(j);
        rng.shuffle(std::span<std::uint16_t>(row, own));
        rng.shuffle(std::span<std::uint16_t>(row + own, w - own));
    }
    return Instance::from_flat(n, std::move(flat));
}

Instance symmetric_from_rounds(const std::vector<int>& round_rank, const std::vector<AgentId>& label) {
    const int n = static_cast<int>(label.size());
    check_n(n);
    if (n % 2 != 0) throw Error(ErrorCode::OddNotSupported, "symmetric culture needs an even number of agents");
    if (static_cast<int>(round_rank.size()) != n - 1)
        throw Error(ErrorCode::InvalidArgument, "need one rank per round");
    const int m = n - 1;
    const std::size_t w = m;
    std::vector<std::uint16_t> flat(w * n);
    auto put = [&](int a, int b, int r) {
        int la = label[a], lb = label[b], k = round_rank[r] - 1;
        flat[la * w + k] = static_cast<std::uint16_t>(lb);
        flat[lb * w + k] = static_cast<std::uint16_t>(la);
    };
    for (int r = 0; r < m; ++r) {
        put(m, r, r);
        for (int k = 1; k <= (n - 2) / 2; ++k) put((r + k) % m, ((r - k) % m + m) % m, r);
    }
    return Instance::from_flat(n, std::move(flat));
}

Instance gen_symmetric(int n, Rng& rng) {
    check_n(n);
    if (n % 2 != 0) throw Error(ErrorCode::OddNotSupported, "symmetric culture needs an even number of agents");
    std::vector<int> round_rank(n - 1);
    std::iota(round_rank.begin(), round_rank.end(), 1);
    rng.shuffle(std::span<int>(round_rank));
    auto label = random_labels(n, rng);
    return symmetric_from_rounds(round_rank, label);
}

Instance asymmetric_from_labels(const std::vector<AgentId>& label) {
    const int n = static_cast<int>(label.size());
    check_n(n);
    const std::size_t w = n - 1;
    std::vector<std::uint16_t> flat(w * n);
    for (int a = 0; a < n; ++a)
        for (int d = 1; d < n; ++d) flat[label[a] * w + (d - 1)] = static_cast<std::uint16_t>(label[(a + d) % n]);
    return Instance::from_flat(n, std::move(flat));
}

Instance gen_asymmetric(int n, Rng& rng) {
    check_n(n);
    return asymmetric_from_labels(random_labels(n, rng));
}

Instance euclidean_from_points(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    check_n(n);
    return sorted_instance(n, [&](int i, int j) {
        double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
        return dx * dx + dy * dy;
    });
}

Instance gen_euclidean(int n, Rng& rng) {
    check_n(n);
    return euclidean_from_points(random_points(n, rng));
}

Instance attributes_from(const std::vector<Point>& pts, const std::vector<Point>& weights) {
    const int n = static_cast<int>(pts.size());
    check_n(n);
    if (weights.size() != pts.size()) throw Error(ErrorCode::InvalidArgument, "need one weight pair per agent");
    // squared score: same order as the weighted distance
    return sorted_instance(n, [&](int i, int j) {
        double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
        return weights[i].x * dx * dx + weights[i].y * dy * dy;
    });
}

Instance gen_attributes(int n, Rng& rng) {
    check_n(n);
    auto pts = random_points(n, rng);
    auto weights = random_points(n, rng);
    return attributes_from(pts, weights);
}

std::vector<std::uint16_t> rim_sample(const std::vector<std::uint16_t>& reference, double phi, Rng& rng) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw Error(ErrorCode::InvalidArgument, "phi must lie in [0, 1]");
    std::vector<std::uint16_t> out;
    out.reserve(reference.size());
    for (std::size_t t = 1; t <= reference.size(); ++t) {
        // item t goes j slots before the end with probability ~ phi^j, j < t
        std::size_t j;
        if (phi == 1.0) {
            j = rng.below(t);
        } else {
            do {
                j = 0;
                while (rng.bernoulli(phi)) ++j;
            } while (j >= t);
        }
        out.insert(out.end() - static_cast<std::ptrdiff_t>(j), reference[t - 1]);
    }
    return out;
}

Instance gen_mallows_euclidean(int n, Rng& rng, double phi) {
    check_n(n);
    if (!(phi >= 0.0 && phi <= 1.0)) throw Error(ErrorCode::InvalidArgument, "phi must lie in [0, 1]");
    Instance base = gen_euclidean(n, rng);
    const std::size_t w = n - 1;
    std::vector<std::uint16_t> flat(w * n);
    std::vector<std::uint16_t> ref(w);
    for (int i = 0; i < n; ++i) {
        auto row = base.row(i);
        std::copy(row.begin(), row.end(), ref.begin());
        auto perturbed = rim_sample(ref, phi, rng);
        std::copy(perturbed.begin(), perturbed.end(), flat.begin() + i * w);
    }
    return Instance::from_flat(n, std::move(flat));
}

Instance generate(const Culture& c, int n, Rng& rng) {
    switch (c.tag) {
    case CultureTag::IC: return gen_ic(n, rng);
    case CultureTag::TwoIC: return gen_2ic(n, rng);
    case CultureTag::Symmetric: return gen_symmetric(n, rng);
    case CultureTag::Asymmetric: return gen_asymmetric(n, rng);
    case CultureTag::Euclidean: return gen_euclidean(n, rng);
    case CultureTag::Attributes: return gen_attributes(n, rng);
    case CultureTag::MallowsEuclidean: return gen_mallows_euclidean(n, rng, c.phi);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown culture");
}

std::uint64_t trial_seed(std::uint64_t master, CultureTag tag, int n, std::uint64_t trial) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ (static_cast<std::uint64_t>(tag) + 1) * 0x100000001b3ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(n));
    return mix64(h ^ trial);
}

Instance generate_trial(const Culture& c, int n, std::uint64_t master, std::uint64_t trial) {
    Rng rng(trial_seed(master, c.tag, n, trial));
    return generate(c, n, rng);
}

} // namespace srkit
