#include <CLI11.hpp>

#include <nimhoff/nimhoff.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace nimhoff;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

std::uint64_t parse_env_number(const char* name, const char* text) {
    std::uint64_t value = 0;
    std::size_t consumed = 0;
    try {
        value = std::stoull(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + " is not a number: " + text);
    }
    if (consumed != std::string(text).size() || value == 0) {
        throw std::invalid_argument(std::string(name) + " is not a positive number: " + text);
    }
    return value;
}

Caps caps_from_env() {
    Caps caps;
    if (const char* v = std::getenv("NIMHOFF_DP_CAP")) {
        caps.dp_cap = parse_env_number("NIMHOFF_DP_CAP", v);
    }
    if (const char* v = std::getenv("NIMHOFF_NODE_CAP")) {
        caps.node_cap = parse_env_number("NIMHOFF_NODE_CAP", v);
    }
    return caps;
}

std::vector<HeapSize> parse_number_list(const std::string& text, const char* what) {
    std::vector<HeapSize> out;
    detail::Cursor cur{text};
    out.push_back(cur.nat());
    while (cur.try_consume(',')) out.push_back(cur.nat());
    if (!cur.at_end()) {
        throw std::invalid_argument(std::string(what) + " must be comma-separated numbers: " + text);
    }
    return out;
}

std::string join_heaps(const std::vector<HeapSize>& heaps) {
    std::string out;
    for (std::size_t i = 0; i < heaps.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(heaps[i]);
    }
    return out;
}

std::string describe_move(const Move& move) {
    if (move.kind == MoveKind::single_heap) {
        return "heap " + std::to_string(move.heap + 1) + " removes " +
               std::to_string(move.removals[move.heap]);
    }
    return "cyclic " + join_heaps(move.removals);
}

// Reports go to stdout unless --out redirects them to a file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.emplace(path);
            if (!*file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

private:
    std::optional<std::ofstream> file_;
};

EngineChoice engine_from_name(const std::string& name) {
    if (name == "closed") return EngineChoice::closed_form;
    if (name == "oracle") return EngineChoice::oracle;
    return EngineChoice::automatic;
}

void print_breakdown(std::ostream& os, const ClosedFormBreakdown& b,
                     const std::vector<HeapSize>& heaps) {
    os << "Q=" << b.height_nim_sum << "\n";
    os << "R=" << b.remainder_sum << "\n";
    for (std::size_t i = 0; i < heaps.size(); ++i) {
        os << "heap " << (i + 1) << ": x=" << heaps[i] << " q=" << b.quotients[i]
           << " r=" << b.remainders[i] << " gvalue=" << b.heap_values[i]
           << " height=" << b.heights[i] << "\n";
    }
    os << "stair=" << (b.stair_proven ? "proven" : "checked") << "\n";
}

struct SeqArgs {
    std::string set_text;
    std::uint64_t count = 0;
    std::string format = "table";
    std::string out_path;
};

int run_seq(const SeqArgs& args, const Caps& caps) {
    const SubtractionSet set = parse_set_spec(args.set_text);
    const GrundySequence seq = grundy_sequence(set, args.count, caps);
    Output out(args.out_path);
    if (args.format == "csv") {
        write_sequence_csv(out.stream(), seq);
    } else {
        const std::size_t digits = std::to_string(args.count == 0 ? 0 : args.count - 1).size();
        const std::size_t width = std::max<std::size_t>(digits, 5);
        out.stream() << std::string(width - 5, ' ') << "index gvalue\n";
        for (std::size_t i = 0; i < seq.values.size(); ++i) {
            const std::string index = std::to_string(i);
            out.stream() << std::string(width - index.size(), ' ') << index << ' '
                         << seq.values[i] << "\n";
        }
    }
    return exit_ok;
}

struct EvalArgs {
    std::string game_text;
    std::string pos_text;
    std::string engine = "auto";
    std::string out_path;
};

int run_grundy(const EvalArgs& args, const Caps& caps) {
    const GcnSpec spec = parse_game_spec(args.game_text);
    const Position pos{parse_number_list(args.pos_text, "--pos")};
    const MoveAdvice advice = evaluate(spec, pos, engine_from_name(args.engine), caps);
    Output out(args.out_path);
    out.stream() << "grundy=" << advice.grundy << "\n";
    out.stream() << "engine=" << to_string(advice.engine) << "\n";
    if (advice.breakdown) print_breakdown(out.stream(), *advice.breakdown, pos.heaps);
    return exit_ok;
}

int run_outcome(const EvalArgs& args, const Caps& caps) {
    const GcnSpec spec = parse_game_spec(args.game_text);
    const Position pos{parse_number_list(args.pos_text, "--pos")};
    const MoveAdvice advice = evaluate(spec, pos, engine_from_name(args.engine), caps);
    Output out(args.out_path);
    out.stream() << "outcome=" << (advice.outcome == Outcome::P ? "P" : "N") << "\n";
    out.stream() << "engine=" << to_string(advice.engine) << "\n";
    return exit_ok;
}

int run_best_move(const EvalArgs& args, const Caps& caps) {
    const GcnSpec spec = parse_game_spec(args.game_text);
    const Position pos{parse_number_list(args.pos_text, "--pos")};
    const MoveAdvice advice = best_move(spec, pos, engine_from_name(args.engine), caps);
    Output out(args.out_path);
    out.stream() << "outcome=" << (advice.outcome == Outcome::P ? "P" : "N") << "\n";
    out.stream() << "engine=" << to_string(advice.engine) << "\n";
    if (advice.winning_move) {
        out.stream() << "move: " << describe_move(*advice.winning_move) << " -> "
                     << join_heaps(advice.resulting->heaps) << "\n";
    } else {
        out.stream() << "no winning move\n";
    }
    if (advice.breakdown) print_breakdown(out.stream(), *advice.breakdown, pos.heaps);
    return exit_ok;
}

struct VerifyArgs {
    std::string game_text;
    std::string box_text;
    std::string format = "text";
    std::string out_path;
};

int run_verify(const VerifyArgs& args, const Caps& caps) {
    const GcnSpec spec = parse_game_spec(args.game_text);
    const std::vector<HeapSize> box = parse_number_list(args.box_text, "--box");
    const VerifyReport report = verify_closed_form(spec, box, caps);
    Output out(args.out_path);
    if (args.format == "csv") {
        write_verify_csv(out.stream(), report);
    } else {
        write_verify_text(out.stream(), report);
    }
    std::cerr << "elapsed=" << report.seconds << "s nodes=" << report.stats.nodes << "\n";
    return report.ok() ? exit_ok : exit_mismatch;
}

struct StairArgs {
    std::string set_text;
    std::uint64_t h = 1;
    std::uint64_t count = 0;
    std::string format = "text";
    std::string out_path;
};

int run_stair(const StairArgs& args, const Caps& caps) {
    const SubtractionSet set = parse_set_spec(args.set_text);
    const GrundySequence seq = grundy_sequence(set, args.count, caps);
    const StairResult result = stair_decompose(seq.values, args.h);
    Output out(args.out_path);
    if (const auto* violation = std::get_if<StairViolation>(&result)) {
        out.stream() << "stair violation at index " << violation->index << "\n";
        return exit_mismatch;
    }
    const auto& d = std::get<StairDecomposition>(result);
    if (args.format == "csv") {
        write_stair_csv(out.stream(), seq.values, d);
    } else {
        out.stream() << "h-stair OK; base prefix ";
        const std::size_t shown = std::min<std::size_t>(d.base.size(), 16);
        for (std::size_t i = 0; i < shown; ++i) {
            if (i > 0) out.stream() << ',';
            out.stream() << d.base[i];
        }
        if (d.base.size() > shown) out.stream() << ",...";
        out.stream() << "\n";
    }
    return exit_ok;
}

struct PeriodArgs {
    std::string set_text;
    std::uint64_t count = 0;
    std::uint64_t max_period = 0;  // 0: a quarter of the prefix
    std::string out_path;
};

int run_period(const PeriodArgs& args, const Caps& caps) {
    const SubtractionSet set = parse_set_spec(args.set_text);
    const GrundySequence seq = grundy_sequence(set, args.count, caps);
    const std::uint64_t max_period =
        args.max_period > 0 ? args.max_period : std::max<std::uint64_t>(args.count / 4, 1);
    const PeriodicityReport report = detect_periodicity(seq.values, max_period);
    Output out(args.out_path);
    out.stream() << to_key_value_block(report);
    return report.classification == PeriodicityClass::undetected ? exit_mismatch : exit_ok;
}

struct LiftCheckArgs {
    std::string set_text;
    std::uint64_t h = 1;
    std::uint64_t count = 0;
    std::string out_path;
};

int run_lift_check(const LiftCheckArgs& args, const Caps& caps) {
    const SubtractionSet set = parse_set_spec(args.set_text);
    const LiftIdentityReport report = verify_lift_identity(set, args.h, args.count, caps);
    Output out(args.out_path);
    if (report.ok()) {
        out.stream() << "OK " << report.checked << " values\n";
        return exit_ok;
    }
    out.stream() << "MISMATCH at n=" << *report.first_mismatch << ": lifted="
                 << report.lifted_value << " stair=" << report.composed_value << "\n";
    return exit_mismatch;
}

struct PlayArgs {
    std::string game_text;
    std::string pos_text;
    bool human_first = true;
};

struct ParsedMove {
    std::optional<Move> move;
    std::string error;
};

ParsedMove parse_human_move(const std::string& line, const GcnSpec& spec, const Position& pos) {
    std::istringstream in(line);
    std::string word;
    in >> word;
    const std::size_t n = pos.heaps.size();
    if (word == "heap") {
        std::uint64_t heap = 0;
        std::string remove_kw;
        std::uint64_t amount = 0;
        if (!(in >> heap >> remove_kw >> amount) || remove_kw != "remove") {
            return {std::nullopt, "expected: heap <i> remove <s>"};
        }
        std::string rest;
        if (in >> rest) return {std::nullopt, "expected: heap <i> remove <s>"};
        if (heap < 1 || heap > n) {
            return {std::nullopt, "no heap " + std::to_string(heap) + "; the game has " +
                                      std::to_string(n) + " heaps"};
        }
        if (amount == 0) return {std::nullopt, "removal amounts must be positive"};
        if (amount > pos.heaps[heap - 1]) {
            return {std::nullopt, "heap " + std::to_string(heap) + " holds only " +
                                      std::to_string(pos.heaps[heap - 1]) + " tokens"};
        }
        if (!spec.sets[heap - 1].contains(amount)) {
            return {std::nullopt, "the subtraction set of heap " + std::to_string(heap) +
                                      " does not allow removing " + std::to_string(amount)};
        }
        Move move{MoveKind::single_heap, heap - 1, std::vector<HeapSize>(n, 0)};
        move.removals[heap - 1] = amount;
        return {move, ""};
    }
    if (word == "cyclic") {
        std::string list_text;
        in >> list_text;
        std::string rest;
        if (in >> rest) return {std::nullopt, "expected: cyclic <s1,...,sn>"};
        std::vector<HeapSize> removals;
        try {
            removals = parse_number_list(list_text, "cyclic removals");
        } catch (const std::exception&) {
            return {std::nullopt, "expected: cyclic <s1,...,sn>"};
        }
        if (removals.size() != n) {
            return {std::nullopt, "cyclic moves need one amount per heap (" +
                                      std::to_string(n) + ")"};
        }
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (removals[i] > pos.heaps[i]) {
                return {std::nullopt, "heap " + std::to_string(i + 1) + " holds only " +
                                          std::to_string(pos.heaps[i]) + " tokens"};
            }
            total += removals[i];
        }
        if (total == 0) return {std::nullopt, "removal amounts must be positive"};
        if (total >= spec.h) {
            return {std::nullopt,
                    "cyclic removals must total less than h=" + std::to_string(spec.h)};
        }
        return {Move{MoveKind::cyclic, 0, std::move(removals)}, ""};
    }
    return {std::nullopt, "commands: heap <i> remove <s> | cyclic <s1,...,sn> | quit"};
}

int run_play(const PlayArgs& args, const Caps& caps) {
    const GcnSpec spec = parse_game_spec(args.game_text);
    Position pos{parse_number_list(args.pos_text, "--pos")};
    validate_position(spec, pos);
    std::cout << "game: " << render_game_spec(spec) << "\n";
    std::cout << "position: " << join_heaps(pos.heaps) << "\n";
    if (is_terminal(pos)) {
        std::cout << "no moves available; " << (args.human_first ? "you lose" : "the engine loses")
                  << "\n";
        return exit_ok;
    }
    bool humans_turn = args.human_first;
    while (true) {
        if (humans_turn) {
            std::cout << "your move> " << std::flush;
            std::string line;
            if (!std::getline(std::cin, line)) {
                std::cout << "\nsession closed\n";
                return exit_ok;
            }
            if (line == "quit" || line == "q") {
                std::cout << "session closed\n";
                return exit_ok;
            }
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            const ParsedMove parsed = parse_human_move(line, spec, pos);
            if (!parsed.move) {
                std::cout << "illegal move: " << parsed.error << "\n";
                continue;
            }
            // The typed move must appear verbatim in the generated move list.
            bool legal = false;
            for (const auto& [move, result] : legal_moves(spec, pos)) {
                if (move == *parsed.move) {
                    legal = true;
                    pos = result;
                    break;
                }
            }
            if (!legal) {
                std::cout << "illegal move: not in the legal move list\n";
                continue;
            }
            std::cout << "position: " << join_heaps(pos.heaps) << "\n";
            if (is_terminal(pos)) {
                std::cout << "you made the last move and win\n";
                return exit_ok;
            }
        } else {
            const MoveAdvice advice = best_move(spec, pos, EngineChoice::automatic, caps);
            Move chosen;
            if (advice.winning_move) {
                chosen = *advice.winning_move;
                pos = *advice.resulting;
            } else {
                auto moves = legal_moves(spec, pos);
                chosen = moves.front().first;
                pos = moves.front().second;
            }
            std::cout << "engine moves: " << describe_move(chosen)
                      << " -> position: " << join_heaps(pos.heaps) << "\n";
            if (is_terminal(pos)) {
                std::cout << "engine made the last move and wins\n";
                return exit_ok;
            }
        }
        humans_turn = !humans_turn;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized cyclic Nimhoff toolkit"};
    app.require_subcommand(1);

    SeqArgs seq_args;
    CLI::App* seq = app.add_subcommand("seq", "print a Grundy sequence");
    seq->add_option("--set", seq_args.set_text, "subtraction set")->required();
    seq->add_option("--count", seq_args.count, "number of values")->required();
    seq->add_option("--format", seq_args.format, "report format")->check(CLI::IsMember({"csv", "table"}));
    seq->add_option("--out", seq_args.out_path, "write the report to a file");

    EvalArgs grundy_args;
    CLI::App* grundy = app.add_subcommand("grundy", "Grundy value of a position");
    grundy->add_option("--game", grundy_args.game_text, "game description")->required();
    grundy->add_option("--pos", grundy_args.pos_text, "comma-separated heap sizes")->required();
    grundy->add_option("--engine", grundy_args.engine, "evaluation engine")
        ->check(CLI::IsMember({"auto", "closed", "oracle"}));
    grundy->add_option("--out", grundy_args.out_path, "write the report to a file");

    EvalArgs outcome_args;
    CLI::App* outcome_cmd = app.add_subcommand("outcome", "N or P verdict for a position");
    outcome_cmd->add_option("--game", outcome_args.game_text, "game description")->required();
    outcome_cmd->add_option("--pos", outcome_args.pos_text, "comma-separated heap sizes")->required();
    outcome_cmd->add_option("--engine", outcome_args.engine, "evaluation engine")
        ->check(CLI::IsMember({"auto", "closed", "oracle"}));
    outcome_cmd->add_option("--out", outcome_args.out_path, "write the report to a file");

    EvalArgs best_args;
    CLI::App* best = app.add_subcommand("best-move", "winning move when one exists");
    best->add_option("--game", best_args.game_text, "game description")->required();
    best->add_option("--pos", best_args.pos_text, "comma-separated heap sizes")->required();
    best->add_option("--engine", best_args.engine, "evaluation engine")
        ->check(CLI::IsMember({"auto", "closed", "oracle"}));
    best->add_option("--out", best_args.out_path, "write the report to a file");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "closed form against brute force over a box");
    verify->add_option("--game", verify_args.game_text, "game description")->required();
    verify->add_option("--box", verify_args.box_text, "per-heap upper bounds")->required();
    verify->add_option("--format", verify_args.format, "report format")->check(CLI::IsMember({"text", "csv"}));
    verify->add_option("--out", verify_args.out_path, "write the report to a file");

    StairArgs stair_args;
    CLI::App* stair = app.add_subcommand("stair", "stair structure of a Grundy sequence");
    stair->set_help_flag("--help", "print this help message");
    stair->add_option("--set", stair_args.set_text, "subtraction set")->required();
    stair->add_option("--h", stair_args.h, "stair height")->required()->check(CLI::PositiveNumber);
    stair->add_option("--count", stair_args.count, "sequence length")->required();
    stair->add_option("--format", stair_args.format, "report format")->check(CLI::IsMember({"text", "csv"}));
    stair->add_option("--out", stair_args.out_path, "write the report to a file");

    PeriodArgs period_args;
    CLI::App* period = app.add_subcommand("period", "periodicity of a Grundy sequence");
    period->add_option("--set", period_args.set_text, "subtraction set")->required();
    period->add_option("--count", period_args.count, "sequence length")->required();
    period->add_option("--max-period", period_args.max_period, "largest period to try (default: count/4)");
    period->add_option("--out", period_args.out_path, "write the report to a file");

    LiftCheckArgs lift_args;
    CLI::App* lift = app.add_subcommand("lift-check", "lifted-set identity over a prefix");
    lift->set_help_flag("--help", "print this help message");
    lift->add_option("--set", lift_args.set_text, "base subtraction set")->required();
    lift->add_option("--h", lift_args.h, "stair height")->required()->check(CLI::PositiveNumber);
    lift->add_option("--count", lift_args.count, "values to compare")->required();
    lift->add_option("--out", lift_args.out_path, "write the report to a file");

    PlayArgs play_args;
    CLI::App* play = app.add_subcommand("play", "interactive session against the engine");
    play->add_option("--game", play_args.game_text, "game description")->required();
    play->add_option("--pos", play_args.pos_text, "starting position")->required();
    play->add_option("--human-first", play_args.human_first, "true: you open; false: the engine opens");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const Caps caps = caps_from_env();
        if (seq->parsed()) return run_seq(seq_args, caps);
        if (grundy->parsed()) return run_grundy(grundy_args, caps);
        if (outcome_cmd->parsed()) return run_outcome(outcome_args, caps);
        if (best->parsed()) return run_best_move(best_args, caps);
        if (verify->parsed()) return run_verify(verify_args, caps);
        if (stair->parsed()) return run_stair(stair_args, caps);
        if (period->parsed()) return run_period(period_args, caps);
        if (lift->parsed()) return run_lift_check(lift_args, caps);
        if (play->parsed()) return run_play(play_args, caps);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const StairPreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const CoverageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
