#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nimhoff/closed_form.hpp"
#include "nimhoff/common.hpp"
#include "nimhoff/game.hpp"
#include "nimhoff/grundy.hpp"
#include "nimhoff/oracle.hpp"

namespace nimhoff {

enum class Engine { closed_form, oracle };

enum class EngineChoice { automatic, closed_form, oracle };

inline std::string_view to_string(Engine e) {
    return e == Engine::closed_form ? "closed-form" : "oracle";
}

/// Verdict for one position: its outcome and, for an N-position, the first
/// move in the canonical order that reaches a zero position.
struct MoveAdvice {
    Outcome outcome = Outcome::P;
    Grundy grundy = 0;
    std::optional<Move> winning_move;
    std::optional<Position> resulting;
    Engine engine = Engine::oracle;
    std::optional<ClosedFormBreakdown> breakdown;  // present when the closed form ran
};

namespace detail {

struct ClosedEvaluation {
    std::vector<GrundySequence> sequences;
    ClosedFormBreakdown breakdown;
};

// Closed-form evaluation with sequences long enough to cover every successor
// and the stair check window max(x) + h.
inline ClosedEvaluation evaluate_closed(const GcnSpec& spec, const Position& pos,
                                        const Caps& caps) {
    const HeapSize max_heap =
        pos.heaps.empty() ? 0 : *std::max_element(pos.heaps.begin(), pos.heaps.end());
    const std::size_t length = static_cast<std::size_t>(max_heap + spec.h + 1);
    ClosedEvaluation eval;
    eval.sequences.reserve(spec.heap_count());
    for (const SubtractionSet& set : spec.sets) {
        eval.sequences.push_back(grundy_sequence(set, length, caps));
    }
    eval.breakdown = gcn_closed_grundy(spec, pos, eval.sequences);
    return eval;
}

}  // namespace detail

/// Grundy value plus the engine that produced it. With EngineChoice::automatic
/// the closed form is used when its stair precondition holds (proven or
/// checked on the DP prefix) and the brute-force search otherwise.
inline MoveAdvice evaluate(const GcnSpec& spec, const Position& pos,
                           EngineChoice choice = EngineChoice::automatic,
                           const Caps& caps = {}) {
    validate_spec(spec);
    validate_position(spec, pos);
    MoveAdvice advice;
    if (choice != EngineChoice::oracle) {
        try {
            detail::ClosedEvaluation eval = detail::evaluate_closed(spec, pos, caps);
            advice.engine = Engine::closed_form;
            advice.grundy = eval.breakdown.value;
            advice.breakdown = std::move(eval.breakdown);
            advice.outcome = advice.grundy == 0 ? Outcome::P : Outcome::N;
            return advice;
        } catch (const StairPreconditionError&) {
            if (choice == EngineChoice::closed_form) throw;
        } catch (const ResourceLimitError&) {
            if (choice == EngineChoice::closed_form) throw;
        }
    }
    OracleCache cache(spec);
    advice.engine = Engine::oracle;
    advice.grundy = oracle_grundy(cache, pos, caps);
    advice.outcome = advice.grundy == 0 ? Outcome::P : Outcome::N;
    return advice;
}

inline Outcome outcome(const GcnSpec& spec, const Position& pos,
                       EngineChoice choice = EngineChoice::automatic, const Caps& caps = {}) {
    return evaluate(spec, pos, choice, caps).outcome;
}

/// Full advice: on an N-position, the first move in legal_moves order whose
/// resulting position has Grundy value 0 under the same engine.
inline MoveAdvice best_move(const GcnSpec& spec, const Position& pos,
                            EngineChoice choice = EngineChoice::automatic,
                            const Caps& caps = {}) {
    validate_spec(spec);
    validate_position(spec, pos);
    const std::size_t n = pos.heaps.size();

    if (choice != EngineChoice::oracle) {
        try {
            detail::ClosedEvaluation eval = detail::evaluate_closed(spec, pos, caps);
            MoveAdvice advice;
            advice.engine = Engine::closed_form;
            advice.grundy = eval.breakdown.value;
            advice.breakdown = std::move(eval.breakdown);
            advice.outcome = advice.grundy == 0 ? Outcome::P : Outcome::N;
            if (advice.outcome == Outcome::N) {
                std::vector<HeapSize> next(pos.heaps);
                const auto try_move = [&](Move&& move) {
                    if (detail::closed_form_value(spec, eval.sequences, next) != 0) return true;
                    advice.winning_move = std::move(move);
                    advice.resulting = Position{next};
                    return false;
                };
                detail::walk_single_heap_moves(spec, pos.heaps, [&](std::size_t i, HeapSize s) {
                    next[i] = pos.heaps[i] - s;
                    Move move{MoveKind::single_heap, i, std::vector<HeapSize>(n, 0)};
                    move.removals[i] = s;
                    const bool keep_going = try_move(std::move(move));
                    next[i] = pos.heaps[i];
                    return keep_going;
                });
                if (!advice.winning_move) {
                    detail::walk_cyclic_removals(
                        spec, pos.heaps, [&](const std::vector<HeapSize>& removals) {
                            for (std::size_t j = 0; j < n; ++j) next[j] = pos.heaps[j] - removals[j];
                            return try_move(Move{MoveKind::cyclic, 0, removals});
                        });
                }
                if (!advice.winning_move) {
                    throw std::logic_error("no zero successor found from an N-position");
                }
            }
            return advice;
        } catch (const StairPreconditionError&) {
            if (choice == EngineChoice::closed_form) throw;
        } catch (const ResourceLimitError&) {
            if (choice == EngineChoice::closed_form) throw;
        }
    }

    OracleCache cache(spec);
    MoveAdvice advice;
    advice.engine = Engine::oracle;
    advice.grundy = oracle_grundy(cache, pos, caps);
    advice.outcome = advice.grundy == 0 ? Outcome::P : Outcome::N;
    if (advice.outcome == Outcome::N) {
        for (auto& [move, result] : legal_moves(spec, pos)) {
            if (oracle_grundy(cache, result, caps) == 0) {
                advice.winning_move = std::move(move);
                advice.resulting = std::move(result);
                break;
            }
        }
        if (!advice.winning_move) {
            throw std::logic_error("no zero successor found from an N-position");
        }
    }
    return advice;
}

}  // namespace nimhoff
