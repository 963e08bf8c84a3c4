#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nimhoff/common.hpp"
#include "nimhoff/subtraction_set.hpp"

namespace nimhoff {

/// Least nonnegative integer not present in `values`.
inline Grundy mex(std::span<const Grundy> values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (Grundy v : values) {
        if (v <= values.size()) seen[static_cast<std::size_t>(v)] = true;
    }
    Grundy g = 0;
    while (seen[static_cast<std::size_t>(g)]) ++g;
    return g;
}

inline Grundy mex(const std::vector<Grundy>& values) {
    return mex(std::span<const Grundy>(values));
}

/// Carry-free binary sum (bitwise XOR fold); empty input gives 0.
inline Grundy nim_sum(std::span<const Grundy> values) {
    Grundy acc = 0;
    for (Grundy v : values) acc ^= v;
    return acc;
}

inline Grundy nim_sum(const std::vector<Grundy>& values) {
    return nim_sum(std::span<const Grundy>(values));
}

/// Grundy value of a disjunctive sum, from the component values.
inline Grundy sum_grundy(std::span<const Grundy> component_values) {
    return nim_sum(component_values);
}

inline Grundy sum_grundy(const std::vector<Grundy>& component_values) {
    return nim_sum(std::span<const Grundy>(component_values));
}

/// Memoized prefix of the single-heap Grundy sequence of Subtraction(set).
struct GrundySequence {
    SubtractionSet set;
    std::vector<Grundy> values;

    std::size_t length() const noexcept { return values.size(); }
};

/// values[x] = mex{ values[x-s] : s in set, s <= x }, values[0] = 0.
inline GrundySequence grundy_sequence(const SubtractionSet& set, std::size_t length,
                                      const Caps& caps = {}) {
    if (length > caps.dp_cap) {
        throw ResourceLimitError("NIMHOFF_DP_CAP", caps.dp_cap,
                                 "requested sequence length " + std::to_string(length));
    }
    GrundySequence seq{set, {}};
    if (length == 0) return seq;
    seq.values.reserve(length);
    std::vector<char> member(length, 0);
    for (std::size_t s = 1; s < length; ++s) member[s] = set.contains(s) ? 1 : 0;
    std::vector<std::size_t> stamped(length + 1, 0);
    for (std::size_t x = 0; x < length; ++x) {
        for (std::size_t s = 1; s <= x; ++s) {
            if (member[s]) stamped[static_cast<std::size_t>(seq.values[x - s])] = x + 1;
        }
        Grundy g = 0;
        while (stamped[static_cast<std::size_t>(g)] == x + 1) ++g;
        seq.values.push_back(g);
    }
    return seq;
}

struct LiftIdentityReport {
    std::uint64_t h = 1;
    std::size_t checked = 0;
    std::optional<std::size_t> first_mismatch;
    Grundy lifted_value = 0;    // DP on the lifted set, at the mismatch
    Grundy composed_value = 0;  // base DP pushed through the stair formula, at the mismatch

    bool ok() const noexcept { return !first_mismatch.has_value(); }
};

/// Checks, for all n < length, that the Grundy sequence of the lifted set
/// equals the h-stair of the base set's sequence. Both sides are computed by
/// independent DP runs.
inline LiftIdentityReport verify_lift_identity(const SubtractionSet& set, std::uint64_t h,
                                               std::size_t length, const Caps& caps = {}) {
    LiftIdentityReport report;
    report.h = h;
    const GrundySequence lifted = grundy_sequence(lift_set(set, h), length, caps);
    const std::size_t base_length = length == 0 ? 0 : (length - 1) / h + 1;
    const GrundySequence base = grundy_sequence(set, base_length, caps);
    for (std::size_t n = 0; n < length; ++n) {
        const Grundy expected = base.values[n / h] * h + n % h;
        if (lifted.values[n] != expected) {
            report.first_mismatch = n;
            report.lifted_value = lifted.values[n];
            report.composed_value = expected;
            break;
        }
        ++report.checked;
    }
    return report;
}

inline void write_sequence_csv(std::ostream& os, const GrundySequence& seq) {
    os << "index,gvalue\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        os << i << ',' << seq.values[i] << '\n';
    }
}

}  // namespace nimhoff
