#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "nimhoff/common.hpp"
#include "nimhoff/game.hpp"
#include "nimhoff/grundy.hpp"
#include "nimhoff/stair.hpp"
#include "nimhoff/subtraction_set.hpp"

namespace nimhoff {

/// True when the Grundy sequence of Subtraction(set) is known to be an
/// h-stair for every heap size, without checking any DP prefix.
///
/// Recognized families:
///  - every non-member of the set is a positive multiple of h (this covers
///    the full set, lifted sets, and all-but sets of multiples of h);
///  - the set contains {1,...,l-1} and no multiple of l, for some multiple
///    l of h (Grundy values are then x mod l);
///  - the set is all-but{s1,s2} with s1 < s2 and h = s1.
inline bool stair_guaranteed(const SubtractionSet& set, std::uint64_t h) {
    if (h == 1) return true;

    const std::uint64_t t = set.threshold();
    const std::uint64_t p = set.modulus();

    bool gaps_are_multiples = true;
    for (std::uint64_t v = 1; v < t && gaps_are_multiples; ++v) {
        if (!set.contains(v) && v % h != 0) gaps_are_multiples = false;
    }
    if (gaps_are_multiples) {
        bool tail_ok = true;
        for (std::uint64_t r = 0; r < p && tail_ok; ++r) {
            if (std::binary_search(set.residues().begin(), set.residues().end(), r)) continue;
            // Every element of the excluded class {s >= t : s = r mod p} must
            // be a multiple of h, which forces h | p and h | r.
            tail_ok = p % h == 0 && r % h == 0;
        }
        if (tail_ok) return true;
    }

    // Least non-member; nothing below t + p is missing only for the full set.
    std::uint64_t least_missing = 0;
    for (std::uint64_t v = 1; v <= t + p && least_missing == 0; ++v) {
        if (!set.contains(v)) least_missing = v;
    }
    if (least_missing == 0) return true;

    for (std::uint64_t l = h; l <= least_missing; l += h) {
        bool no_multiple = true;
        for (std::uint64_t v : set.prefix_members()) {
            if (v % l == 0) {
                no_multiple = false;
                break;
            }
        }
        for (std::uint64_t r : set.residues()) {
            if (r % std::gcd(l, p) == 0) {
                no_multiple = false;
                break;
            }
        }
        if (no_multiple) return true;
    }

    if (set.is_cofinite()) {
        const std::vector<std::uint64_t> missing = set.missing_below_threshold();
        if (missing.size() == 2 && h == missing[0]) return true;
    }
    return false;
}

/// Per-heap decomposition behind a closed-form Grundy value: with each heap
/// written as x = q*h + r, the value is Q*h + R where Q is the nim-sum of the
/// stair heights floor(G(x)/h) and R is the removal-invariant sum of heaps
/// mod h.
struct ClosedFormBreakdown {
    std::uint64_t h = 1;
    std::vector<std::uint64_t> quotients;
    std::vector<std::uint64_t> remainders;
    std::vector<Grundy> heap_values;   // G_{S_i}(x_i)
    std::vector<Grundy> heights;       // floor of heap value / h
    Grundy height_nim_sum = 0;         // Q
    std::uint64_t remainder_sum = 0;   // R
    Grundy value = 0;                  // Q*h + R
    std::vector<std::size_t> stair_checked;  // verified sequence prefix, per heap
    bool stair_proven = false;               // every heap in a recognized family
};

namespace detail {

// Formula only; callers are responsible for coverage and the stair shape.
inline Grundy closed_form_value(const GcnSpec& spec, std::span<const GrundySequence> sequences,
                                const std::vector<HeapSize>& heaps) {
    Grundy q = 0;
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < heaps.size(); ++i) {
        q ^= sequences[i].values[static_cast<std::size_t>(heaps[i])] / spec.h;
        r = (r + heaps[i]) % spec.h;
    }
    return q * spec.h + r;
}

}  // namespace detail

/// Closed-form Grundy value of a position, with the full breakdown.
///
/// Each provided sequence must cover its heap's size and its whole prefix must
/// decompose as an h-stair; the checked prefix length is reported per heap.
/// Throws CoverageError or StairPreconditionError otherwise.
inline ClosedFormBreakdown gcn_closed_grundy(const GcnSpec& spec, const Position& pos,
                                             std::span<const GrundySequence> sequences) {
    validate_spec(spec);
    validate_position(spec, pos);
    if (sequences.size() != spec.heap_count()) {
        throw std::invalid_argument("one Grundy sequence per heap required");
    }
    ClosedFormBreakdown out;
    out.h = spec.h;
    out.stair_proven = true;
    for (std::size_t i = 0; i < pos.heaps.size(); ++i) {
        const HeapSize x = pos.heaps[i];
        if (sequences[i].length() <= x) {
            throw CoverageError(i, x, sequences[i].length());
        }
        const StairResult scan = stair_decompose(sequences[i].values, spec.h);
        if (const auto* violation = std::get_if<StairViolation>(&scan)) {
            throw StairPreconditionError(i, violation->index);
        }
        out.stair_checked.push_back(sequences[i].length());
        if (!stair_guaranteed(sequences[i].set, spec.h)) out.stair_proven = false;

        const Grundy g = sequences[i].values[static_cast<std::size_t>(x)];
        out.quotients.push_back(x / spec.h);
        out.remainders.push_back(x % spec.h);
        out.heap_values.push_back(g);
        out.heights.push_back(g / spec.h);
        out.height_nim_sum ^= g / spec.h;
        out.remainder_sum = (out.remainder_sum + x) % spec.h;
    }
    out.value = out.height_nim_sum * spec.h + out.remainder_sum;
    return out;
}

/// Grundy value of the cyclic game where every heap allows arbitrary
/// removals: (xor of floor(x_i/h)) * h + (sum of x_i) mod h.
inline Grundy cyclic_nimhoff_grundy(std::uint64_t h, const Position& pos) {
    if (h < 1) throw std::invalid_argument("cyclic bound h must be positive");
    Grundy q = 0;
    std::uint64_t r = 0;
    for (HeapSize x : pos.heaps) {
        q ^= x / h;
        r = (r + x) % h;
    }
    return q * h + r;
}

}  // namespace nimhoff
