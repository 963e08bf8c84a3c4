#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nimhoff/common.hpp"
#include "nimhoff/subtraction_set.hpp"

namespace nimhoff {

/// The game GCN(h; S1,...,Sn): per-heap subtraction sets plus the cross-heap
/// removals (s1,...,sn) with 0 < s1+...+sn < h.
struct GcnSpec {
    std::uint64_t h = 1;
    std::vector<SubtractionSet> sets;

    std::size_t heap_count() const noexcept { return sets.size(); }

    friend bool operator==(const GcnSpec&, const GcnSpec&) = default;
};

inline void validate_spec(const GcnSpec& spec) {
    if (spec.h < 1) throw std::invalid_argument("cyclic bound h must be positive");
    if (spec.sets.empty()) throw std::invalid_argument("a game needs at least one heap");
}

struct Position {
    std::vector<HeapSize> heaps;

    auto operator<=>(const Position&) const = default;
};

inline void validate_position(const GcnSpec& spec, const Position& pos) {
    if (pos.heaps.size() != spec.heap_count()) {
        throw std::invalid_argument("position has " + std::to_string(pos.heaps.size()) +
                                    " heaps, game has " + std::to_string(spec.heap_count()));
    }
    for (HeapSize x : pos.heaps) {
        if (x > heap_size_limit) throw std::invalid_argument("heap size exceeds limit");
    }
}

inline bool is_terminal(const Position& pos) {
    for (HeapSize x : pos.heaps) {
        if (x != 0) return false;
    }
    return true;
}

enum class Outcome { N, P };

enum class MoveKind { single_heap, cyclic };

struct Move {
    MoveKind kind = MoveKind::cyclic;
    std::size_t heap = 0;               // 0-based, meaningful for single_heap
    std::vector<HeapSize> removals;     // one entry per heap, not all zero

    friend bool operator==(const Move&, const Move&) = default;
};

namespace detail {

// Visits single-heap removal amounts in order: heap 1 ascending, heap 2, ...
// fn(heap_index, amount) returns false to stop. Returns false if stopped.
template <typename Fn>
bool walk_single_heap_moves(const GcnSpec& spec, const std::vector<HeapSize>& heaps, Fn&& fn) {
    for (std::size_t i = 0; i < heaps.size(); ++i) {
        const SubtractionSet& set = spec.sets[i];
        if (set.empty()) continue;
        for (HeapSize s = 1; s <= heaps[i]; ++s) {
            if (!set.contains(s)) continue;
            if (!fn(i, s)) return false;
        }
    }
    return true;
}

// Visits cyclic removal tuples in ascending lexicographic order; the all-zero
// tuple is skipped and the total stays below h. fn(removals) returns false to
// stop. Returns false if stopped.
template <typename Fn>
bool walk_cyclic_removals(const GcnSpec& spec, const std::vector<HeapSize>& heaps, Fn&& fn) {
    if (spec.h < 2) return true;
    const std::size_t n = heaps.size();
    std::vector<HeapSize> removals(n, 0);
    const auto recurse = [&](const auto& self, std::size_t i, std::uint64_t used) -> bool {
        if (i == n) return used == 0 || fn(removals);
        const HeapSize bound = std::min<std::uint64_t>(heaps[i], spec.h - 1 - used);
        for (HeapSize s = 0; s <= bound; ++s) {
            removals[i] = s;
            if (!self(self, i + 1, used + s)) return false;
        }
        removals[i] = 0;
        return true;
    };
    return recurse(recurse, 0, 0);
}

// Visits the heap tuples reachable in one move, in the canonical move order.
// The same buffer is reused across calls; fn may not retain the reference.
template <typename Fn>
void walk_successors(const GcnSpec& spec, const std::vector<HeapSize>& heaps, Fn&& fn) {
    std::vector<HeapSize> next(heaps);
    walk_single_heap_moves(spec, heaps, [&](std::size_t i, HeapSize s) {
        next[i] = heaps[i] - s;
        fn(static_cast<const std::vector<HeapSize>&>(next));
        next[i] = heaps[i];
        return true;
    });
    walk_cyclic_removals(spec, heaps, [&](const std::vector<HeapSize>& removals) {
        for (std::size_t j = 0; j < next.size(); ++j) next[j] = heaps[j] - removals[j];
        fn(static_cast<const std::vector<HeapSize>&>(next));
        return true;
    });
}

}  // namespace detail

/// Enumerates every legal move with its resulting position.
///
/// Order: single-heap moves by heap index then ascending amount, then cyclic
/// moves in lexicographic removal order. A resulting position may appear twice
/// when a single-heap move coincides with a cyclic move; both are listed.
inline std::vector<std::pair<Move, Position>> legal_moves(const GcnSpec& spec,
                                                          const Position& pos) {
    validate_spec(spec);
    validate_position(spec, pos);
    const std::size_t n = pos.heaps.size();
    std::vector<std::pair<Move, Position>> out;
    detail::walk_single_heap_moves(spec, pos.heaps, [&](std::size_t i, HeapSize s) {
        Move move{MoveKind::single_heap, i, std::vector<HeapSize>(n, 0)};
        move.removals[i] = s;
        Position result = pos;
        result.heaps[i] -= s;
        out.emplace_back(std::move(move), std::move(result));
        return true;
    });
    detail::walk_cyclic_removals(spec, pos.heaps, [&](const std::vector<HeapSize>& removals) {
        Move move{MoveKind::cyclic, 0, removals};
        Position result = pos;
        for (std::size_t j = 0; j < n; ++j) result.heaps[j] -= removals[j];
        out.emplace_back(std::move(move), std::move(result));
        return true;
    });
    return out;
}

}  // namespace nimhoff
