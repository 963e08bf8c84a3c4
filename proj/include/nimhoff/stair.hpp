#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "nimhoff/common.hpp"

namespace nimhoff {

/// Expand a base prefix a into its h-stair b, defined by b(x*h + r) = a(x)*h + r
/// for r = 0..h-1. The output covers h full blocks per base entry.
inline std::vector<Grundy> stair_compose(std::span<const Grundy> base, std::uint64_t h) {
    if (h < 1) throw std::invalid_argument("stair height h must be positive");
    std::vector<Grundy> out;
    out.reserve(base.size() * static_cast<std::size_t>(h));
    for (Grundy a : base) {
        for (std::uint64_t r = 0; r < h; ++r) out.push_back(a * h + r);
    }
    return out;
}

/// Base prefix recovered from an h-stair. A trailing block shorter than h is
/// validated like the others but its base entry is kept apart as provisional.
struct StairDecomposition {
    std::uint64_t h = 1;
    std::vector<Grundy> base;
    std::optional<Grundy> partial_base;
    std::size_t source_length = 0;
};

struct StairViolation {
    std::size_t index = 0;
};

using StairResult = std::variant<StairDecomposition, StairViolation>;

/// Inverse of stair_compose. Returns the least index at which the input fails
/// to be an h-stair: either b(i) is not congruent to i mod h, or a block is
/// not constant after dividing by h.
inline StairResult stair_decompose(std::span<const Grundy> values, std::uint64_t h) {
    if (h < 1) throw std::invalid_argument("stair height h must be positive");
    StairDecomposition out;
    out.h = h;
    out.source_length = values.size();
    out.base.reserve(values.size() / static_cast<std::size_t>(h));
    Grundy block_base = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint64_t r = i % h;
        if (values[i] % h != r) return StairViolation{i};
        const Grundy entry = values[i] / h;
        if (r == 0) {
            block_base = entry;
        } else if (entry != block_base) {
            return StairViolation{i};
        }
        if (r == h - 1) out.base.push_back(block_base);
    }
    if (values.size() % h != 0) out.partial_base = block_base;
    return out;
}

inline bool is_stair_prefix(std::span<const Grundy> values, std::uint64_t h) {
    return std::holds_alternative<StairDecomposition>(stair_decompose(values, h));
}

/// CSV rows `index,gvalue,block,base`, one per input value.
inline void write_stair_csv(std::ostream& os, std::span<const Grundy> values,
                            const StairDecomposition& d) {
    os << "index,gvalue,block,base\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t block = i / static_cast<std::size_t>(d.h);
        const Grundy base = block < d.base.size() ? d.base[block] : *d.partial_base;
        os << i << ',' << values[i] << ',' << block << ',' << base << '\n';
    }
}

}  // namespace nimhoff
