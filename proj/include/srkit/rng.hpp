#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace srkit {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x);

// mt19937_64 with hand-rolled bounded and real draws so streams match
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // uniform in [0, bound), bound > 0
    std::uint64_t below(std::uint64_t bound);
    // uniform in [0, 1) with 53 bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

    template <class T>
    void shuffle(std::span<T> xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace srkit
