#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <nimhoff/nimhoff.hpp>

namespace test_helpers {

// Membership comparison over a window long enough to separate any two
// canonical descriptions: past both thresholds plus two common periods.
inline bool same_membership(const nimhoff::SubtractionSet& a, const nimhoff::SubtractionSet& b) {
    const std::uint64_t start = std::max(a.threshold(), b.threshold());
    const std::uint64_t period = std::lcm(a.modulus(), b.modulus());
    const std::uint64_t bound = start + 2 * period;
    for (std::uint64_t s = 1; s <= bound; ++s) {
        if (a.contains(s) != b.contains(s)) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> random_list(std::mt19937& rng, std::uint64_t max_value,
                                              std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> size_dist(0, max_size);
    std::uniform_int_distribution<std::uint64_t> value_dist(1, max_value);
    std::vector<std::uint64_t> out(size_dist(rng));
    for (auto& v : out) v = value_dist(rng);
    return out;
}

inline nimhoff::SubtractionSet random_set(std::mt19937& rng) {
    using nimhoff::SubtractionSet;
    switch (rng() % 4) {
        case 0: return SubtractionSet::all();
        case 1: return SubtractionSet::finite(random_list(rng, 24, 6));
        case 2: return SubtractionSet::all_but(random_list(rng, 24, 6));
        default: {
            std::uniform_int_distribution<std::uint64_t> mod_dist(1, 8);
            std::uniform_int_distribution<std::uint64_t> t_dist(1, 12);
            const std::uint64_t modulus = mod_dist(rng);
            const std::uint64_t threshold = t_dist(rng);
            std::vector<std::uint64_t> prefix;
            for (std::uint64_t v = 1; v < threshold; ++v) {
                if (rng() % 2 == 0) prefix.push_back(v);
            }
            std::vector<std::uint64_t> residues;
            for (std::uint64_t r = 0; r < modulus; ++r) {
                if (rng() % 2 == 0) residues.push_back(r);
            }
            return SubtractionSet::periodic(threshold, std::move(prefix), modulus,
                                            std::move(residues));
        }
    }
}

inline nimhoff::GcnSpec random_small_spec(std::mt19937& rng, std::size_t max_heaps = 3) {
    nimhoff::GcnSpec spec;
    spec.h = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % max_heaps;
    for (std::size_t i = 0; i < n; ++i) spec.sets.push_back(random_set(rng));
    return spec;
}

}  // namespace test_helpers
