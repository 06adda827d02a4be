#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace svq {

// Seeded generator passed explicitly to everything that draws randomness.
// One platform, one seed, one stream: results are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // inclusive on both ends
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// Stable 64-bit mix of a master seed with two text labels. Used to derive
// per-job seeds that do not depend on scheduling order.
inline std::uint64_t mix_seed(std::uint64_t master, std::string_view a, std::string_view b) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    auto eat = [&h](unsigned char c) {
        h ^= c;
        h *= 0x100000001b3ull;
    };
    for (int i = 0; i < 8; ++i) eat(static_cast<unsigned char>(master >> (8 * i)));
    for (char c : a) eat(static_cast<unsigned char>(c));
    eat(0x1f);
    for (char c : b) eat(static_cast<unsigned char>(c));
    // splitmix64 finalizer to spread low-entropy labels
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

}  // namespace svq
