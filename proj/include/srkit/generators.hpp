#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srkit/core.hpp"
#include "srkit/rng.hpp"

namespace srkit {

enum class CultureTag { IC, TwoIC, Symmetric, Asymmetric, Euclidean, Attributes, MallowsEuclidean };

struct Culture {
    CultureTag tag = CultureTag::IC;
    double phi = 0.5;  // MallowsEuclidean only
};

// Config tags: ic, 2ic, symmetric, asymmetric, euclidean, attributes,
// mallows-euclidean.
std::string culture_name(CultureTag tag);
CultureTag parse_culture(const std::string& name);
const std::vector<CultureTag>& all_cultures();

Instance gen_ic(int n, Rng& rng);
Instance gen_2ic(int n, Rng& rng);
Instance gen_symmetric(int n, Rng& rng);  // OddNotSupported for odd n
Instance gen_asymmetric(int n, Rng& rng);
Instance gen_euclidean(int n, Rng& rng);
Instance gen_attributes(int n, Rng& rng);
Instance gen_mallows_euclidean(int n, Rng& rng, double phi = 0.5);

Instance generate(const Culture& c, int n, Rng& rng);

// Seed for one trial, independent of evaluation order.
std::uint64_t trial_seed(std::uint64_t master, CultureTag tag, int n, std::uint64_t trial);
Instance generate_trial(const Culture& c, int n, std::uint64_t master, std::uint64_t trial);

// Deterministic building blocks, exposed for tests.
struct Point {
    double x = 0, y = 0;
};
Instance euclidean_from_points(const std::vector<Point>& pts);
Instance attributes_from(const std::vector<Point>& pts, const std::vector<Point>& weights);
// Agent label[a] ranks label[b] at rank (b - a) mod n.
Instance asymmetric_from_labels(const std::vector<AgentId>& label);
// round_rank[r] is the rank given to the round-r partner of the circle method.
Instance symmetric_from_rounds(const std::vector<int>& round_rank, const std::vector<AgentId>& label);
// Repeated insertion draw around a reference order; phi = 0 returns it unchanged.
std::vector<std::uint16_t> rim_sample(const std::vector<std::uint16_t>& reference, double phi, Rng& rng);

} // namespace srkit
