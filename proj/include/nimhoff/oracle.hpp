#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nimhoff/closed_form.hpp"
#include "nimhoff/common.hpp"
#include "nimhoff/game.hpp"
#include "nimhoff/grundy.hpp"
#include "nimhoff/stair.hpp"

namespace nimhoff {

namespace detail {

struct HeapTupleHash {
    std::size_t operator()(const std::vector<HeapSize>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (HeapSize x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Product of (x_i + 1), saturating at UINT64_MAX.
inline std::uint64_t box_volume(const std::vector<HeapSize>& heaps) {
    std::uint64_t total = 1;
    for (HeapSize x : heaps) {
        const std::uint64_t dim = x + 1;
        if (total > UINT64_MAX / dim) return UINT64_MAX;
        total *= dim;
    }
    return total;
}

// Iterative memoized evaluation of a finite DAG of heap tuples. expand lists
// the children of a key; fold combines the children's values. Children with
// fewer total tokens are evaluated first, which keeps the work stack linear
// on chain-like games.
template <typename Value, typename Expand, typename Fold>
Value memoized_dag_value(const std::vector<HeapSize>& root,
                         std::unordered_map<std::vector<HeapSize>, Value, HeapTupleHash>& table,
                         std::uint64_t node_cap, Expand&& expand, Fold&& fold) {
    if (auto it = table.find(root); it != table.end()) return it->second;
    std::vector<std::vector<HeapSize>> stack{root};
    std::unordered_set<std::vector<HeapSize>, HeapTupleHash> expanded;
    std::vector<std::vector<HeapSize>> children;
    std::vector<Value> child_values;
    while (!stack.empty()) {
        const std::vector<HeapSize> key = stack.back();
        if (table.contains(key)) {
            stack.pop_back();
            continue;
        }
        children.clear();
        expand(key, children);
        if (expanded.insert(key).second) {
            std::vector<std::vector<HeapSize>> missing;
            for (const auto& c : children) {
                if (!table.contains(c)) missing.push_back(c);
            }
            if (!missing.empty()) {
                std::sort(missing.begin(), missing.end(),
                          [](const std::vector<HeapSize>& a, const std::vector<HeapSize>& b) {
                              const std::uint64_t ta = std::accumulate(a.begin(), a.end(), 0ull);
                              const std::uint64_t tb = std::accumulate(b.begin(), b.end(), 0ull);
                              if (ta != tb) return ta > tb;
                              return a > b;
                          });
                missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
                for (auto& m : missing) stack.push_back(std::move(m));
                if (stack.size() / 4 > node_cap) {
                    throw ResourceLimitError("NIMHOFF_NODE_CAP", node_cap,
                                             "search frontier exceeded the node budget");
                }
                continue;
            }
        }
        child_values.clear();
        for (const auto& c : children) child_values.push_back(table.at(c));
        table.emplace(key, fold(child_values));
        if (table.size() > node_cap) {
            throw ResourceLimitError("NIMHOFF_NODE_CAP", node_cap,
                                     "exhaustive search visited too many positions");
        }
        stack.pop_back();
    }
    return table.at(root);
}

}  // namespace detail

struct OracleStats {
    std::uint64_t nodes = 0;       // positions whose value was computed
    std::uint64_t peak_table = 0;  // largest memo table reached

    friend bool operator==(const OracleStats&, const OracleStats&) = default;
};

/// Memo table for exact Grundy values of one game, keyed by heap tuple.
struct OracleCache {
    GcnSpec spec;
    std::unordered_map<std::vector<HeapSize>, Grundy, detail::HeapTupleHash> table;
    OracleStats stats;

    explicit OracleCache(GcnSpec s) : spec(std::move(s)) { validate_spec(spec); }
};

/// Exact Grundy value by memoized mex recursion over the legal moves.
/// Requires the sub-box below pos to fit the node cap.
inline Grundy oracle_grundy(OracleCache& cache, const Position& pos, const Caps& caps = {}) {
    validate_position(cache.spec, pos);
    if (detail::box_volume(pos.heaps) > caps.node_cap) {
        throw ResourceLimitError("NIMHOFF_NODE_CAP", caps.node_cap,
                                 "position box exceeds the node budget");
    }
    const Grundy g = detail::memoized_dag_value<Grundy>(
        pos.heaps, cache.table, caps.node_cap,
        [&](const std::vector<HeapSize>& key, std::vector<std::vector<HeapSize>>& out) {
            detail::walk_successors(cache.spec, key,
                                    [&](const std::vector<HeapSize>& next) { out.push_back(next); });
        },
        [](const std::vector<Grundy>& child_values) { return mex(child_values); });
    cache.stats.nodes = cache.table.size();
    cache.stats.peak_table = std::max<std::uint64_t>(cache.stats.peak_table, cache.table.size());
    return g;
}

inline Grundy oracle_grundy(const GcnSpec& spec, const Position& pos, const Caps& caps = {}) {
    OracleCache cache(spec);
    return oracle_grundy(cache, pos, caps);
}

/// Memo table for the win/lose search, independent of Grundy values.
struct OutcomeCache {
    GcnSpec spec;
    std::unordered_map<std::vector<HeapSize>, Outcome, detail::HeapTupleHash> table;
    OracleStats stats;

    explicit OutcomeCache(GcnSpec s) : spec(std::move(s)) { validate_spec(spec); }
};

/// Outcome by plain win/lose search: a position is N iff some move reaches a
/// P-position. No Grundy values are involved.
inline Outcome oracle_outcome(OutcomeCache& cache, const Position& pos, const Caps& caps = {}) {
    validate_position(cache.spec, pos);
    if (detail::box_volume(pos.heaps) > caps.node_cap) {
        throw ResourceLimitError("NIMHOFF_NODE_CAP", caps.node_cap,
                                 "position box exceeds the node budget");
    }
    const Outcome o = detail::memoized_dag_value<Outcome>(
        pos.heaps, cache.table, caps.node_cap,
        [&](const std::vector<HeapSize>& key, std::vector<std::vector<HeapSize>>& out) {
            detail::walk_successors(cache.spec, key,
                                    [&](const std::vector<HeapSize>& next) { out.push_back(next); });
        },
        [](const std::vector<Outcome>& child_values) {
            for (Outcome c : child_values) {
                if (c == Outcome::P) return Outcome::N;
            }
            return Outcome::P;
        });
    cache.stats.nodes = cache.table.size();
    cache.stats.peak_table = std::max<std::uint64_t>(cache.stats.peak_table, cache.table.size());
    return o;
}

inline Outcome oracle_outcome(const GcnSpec& spec, const Position& pos, const Caps& caps = {}) {
    OutcomeCache cache(spec);
    return oracle_outcome(cache, pos, caps);
}

/// Exact Grundy value of the disjunctive sum of two positions: every move
/// plays in exactly one component. Computed by its own mex recursion over the
/// combined state, not from the component values.
inline Grundy oracle_sum_grundy(const GcnSpec& spec_a, const Position& pos_a,
                                const GcnSpec& spec_b, const Position& pos_b,
                                const Caps& caps = {}) {
    validate_spec(spec_a);
    validate_spec(spec_b);
    validate_position(spec_a, pos_a);
    validate_position(spec_b, pos_b);
    const std::uint64_t va = detail::box_volume(pos_a.heaps);
    const std::uint64_t vb = detail::box_volume(pos_b.heaps);
    if (va > caps.node_cap / vb) {
        throw ResourceLimitError("NIMHOFF_NODE_CAP", caps.node_cap,
                                 "combined position box exceeds the node budget");
    }
    const std::size_t na = pos_a.heaps.size();
    std::vector<HeapSize> root = pos_a.heaps;
    root.insert(root.end(), pos_b.heaps.begin(), pos_b.heaps.end());
    std::unordered_map<std::vector<HeapSize>, Grundy, detail::HeapTupleHash> table;
    return detail::memoized_dag_value<Grundy>(
        root, table, caps.node_cap,
        [&](const std::vector<HeapSize>& key, std::vector<std::vector<HeapSize>>& out) {
            std::vector<HeapSize> part_a(key.begin(), key.begin() + na);
            std::vector<HeapSize> part_b(key.begin() + na, key.end());
            detail::walk_successors(spec_a, part_a, [&](const std::vector<HeapSize>& next) {
                std::vector<HeapSize> combined = next;
                combined.insert(combined.end(), part_b.begin(), part_b.end());
                out.push_back(std::move(combined));
            });
            detail::walk_successors(spec_b, part_b, [&](const std::vector<HeapSize>& next) {
                std::vector<HeapSize> combined = part_a;
                combined.insert(combined.end(), next.begin(), next.end());
                out.push_back(std::move(combined));
            });
        },
        [](const std::vector<Grundy>& child_values) { return mex(child_values); });
}

/// Grundy values of every position in the box [0,b1] x ... x [0,bn], computed
/// bottom-up in ascending position order (last heap fastest). Row-major table.
inline std::vector<Grundy> oracle_box_sweep(const GcnSpec& spec,
                                            const std::vector<HeapSize>& box,
                                            OracleStats* stats = nullptr,
                                            const Caps& caps = {}) {
    validate_spec(spec);
    validate_position(spec, Position{box});
    const std::uint64_t volume = detail::box_volume(box);
    if (volume > caps.node_cap) {
        throw ResourceLimitError("NIMHOFF_NODE_CAP", caps.node_cap,
                                 "verification box exceeds the node budget");
    }
    const std::size_t n = box.size();
    std::vector<std::uint64_t> stride(n, 1);
    for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * (box[i] + 1);
    std::vector<Grundy> values(static_cast<std::size_t>(volume), 0);
    std::vector<HeapSize> pos(n, 0);
    std::vector<Grundy> child_values;
    for (std::uint64_t flat = 0; flat < volume; ++flat) {
        child_values.clear();
        detail::walk_successors(spec, pos, [&](const std::vector<HeapSize>& next) {
            std::uint64_t idx = 0;
            for (std::size_t j = 0; j < n; ++j) idx += next[j] * stride[j];
            child_values.push_back(values[static_cast<std::size_t>(idx)]);
        });
        values[static_cast<std::size_t>(flat)] = mex(child_values);
        for (std::size_t j = n; j-- > 0;) {
            if (pos[j] < box[j]) {
                ++pos[j];
                break;
            }
            pos[j] = 0;
        }
    }
    if (stats) {
        stats->nodes = volume;
        stats->peak_table = volume;
    }
    return values;
}

struct VerifyMismatch {
    std::vector<HeapSize> heaps;
    Grundy oracle_value = 0;
    Grundy closed_value = 0;
};

struct StairIssue {
    std::size_t heap = 0;
    std::size_t index = 0;
};

struct VerifyReport {
    std::vector<HeapSize> box;
    std::size_t positions = 0;
    std::vector<VerifyMismatch> mismatches;        // in position order
    std::optional<StairIssue> stair_violation;     // closed form skipped when set
    std::vector<std::size_t> empty_set_heaps;      // heaps whose set has no members
    std::vector<Grundy> oracle_values;             // row-major over the box
    std::vector<Grundy> closed_values;             // empty when the closed form was skipped
    double seconds = 0.0;
    OracleStats stats;

    bool ok() const noexcept { return mismatches.empty() && !stair_violation; }
};

/// Sweeps every position in the box and compares the brute-force value with
/// the closed form. A stair violation is reported, not thrown; the report
/// then carries oracle values only.
inline VerifyReport verify_closed_form(const GcnSpec& spec, const std::vector<HeapSize>& box,
                                       const Caps& caps = {}) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.box = box;
    report.oracle_values = oracle_box_sweep(spec, box, &report.stats, caps);
    report.positions = report.oracle_values.size();
    for (std::size_t i = 0; i < spec.sets.size(); ++i) {
        if (spec.sets[i].empty()) report.empty_set_heaps.push_back(i);
    }

    const HeapSize max_bound = *std::max_element(box.begin(), box.end());
    const std::size_t dp_length = static_cast<std::size_t>(max_bound + spec.h + 1);
    std::vector<GrundySequence> sequences;
    sequences.reserve(spec.heap_count());
    for (const SubtractionSet& set : spec.sets) {
        sequences.push_back(grundy_sequence(set, dp_length, caps));
    }
    for (std::size_t i = 0; i < sequences.size() && !report.stair_violation; ++i) {
        const StairResult scan = stair_decompose(sequences[i].values, spec.h);
        if (const auto* violation = std::get_if<StairViolation>(&scan)) {
            report.stair_violation = StairIssue{i, violation->index};
        }
    }
    if (report.stair_violation) {
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    const std::size_t n = box.size();
    report.closed_values.resize(report.positions, 0);
    std::vector<HeapSize> pos(n, 0);
    for (std::size_t flat = 0; flat < report.positions; ++flat) {
        const Grundy closed = detail::closed_form_value(spec, sequences, pos);
        report.closed_values[flat] = closed;
        if (closed != report.oracle_values[flat]) {
            report.mismatches.push_back({pos, report.oracle_values[flat], closed});
        }
        for (std::size_t j = n; j-- > 0;) {
            if (pos[j] < box[j]) {
                ++pos[j];
                break;
            }
            pos[j] = 0;
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace detail {

inline void write_position(std::ostream& os, const std::vector<HeapSize>& heaps, char sep) {
    for (std::size_t i = 0; i < heaps.size(); ++i) {
        if (i > 0) os << sep;
        os << heaps[i];
    }
}

}  // namespace detail

/// CSV rows `x1,...,xn,oracle,closed`; mismatching positions come first.
inline void write_verify_csv(std::ostream& os, const VerifyReport& report) {
    const std::size_t n = report.box.size();
    for (std::size_t i = 0; i < n; ++i) os << 'x' << (i + 1) << ',';
    os << "oracle,closed\n";
    const auto row = [&](const std::vector<HeapSize>& heaps, std::size_t flat) {
        detail::write_position(os, heaps, ',');
        os << ',' << report.oracle_values[flat] << ',';
        if (!report.closed_values.empty()) os << report.closed_values[flat];
        os << '\n';
    };
    std::unordered_set<std::size_t> mismatch_rows;
    std::vector<HeapSize> pos(n, 0);
    std::vector<std::uint64_t> stride(n, 1);
    for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * (report.box[i] + 1);
    for (const VerifyMismatch& m : report.mismatches) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < n; ++j) flat += m.heaps[j] * stride[j];
        mismatch_rows.insert(flat);
        row(m.heaps, flat);
    }
    for (std::size_t flat = 0; flat < report.positions; ++flat) {
        if (!mismatch_rows.contains(flat)) row(pos, flat);
        for (std::size_t j = n; j-- > 0;) {
            if (pos[j] < report.box[j]) {
                ++pos[j];
                break;
            }
            pos[j] = 0;
        }
    }
}

/// Summary suitable for terminals and golden files; no timing data.
inline void write_verify_text(std::ostream& os, const VerifyReport& report) {
    if (report.stair_violation) {
        os << "stair violation: heap " << (report.stair_violation->heap + 1) << " index "
           << report.stair_violation->index << "; closed form unavailable\n";
        os << "checked " << report.positions << " positions (oracle only)\n";
    } else if (report.mismatches.empty()) {
        os << "OK " << report.positions << " positions\n";
    } else {
        const VerifyMismatch& first = report.mismatches.front();
        os << "MISMATCH at ";
        detail::write_position(os, first.heaps, ',');
        os << ": oracle=" << first.oracle_value << " closed=" << first.closed_value << "\n";
        os << report.mismatches.size() << " of " << report.positions << " positions disagree\n";
    }
    for (std::size_t heap : report.empty_set_heaps) {
        os << "note: heap " << (heap + 1) << " has an empty subtraction set\n";
    }
}

}  // namespace nimhoff
