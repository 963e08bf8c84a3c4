#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nimhoff/common.hpp"
#include "nimhoff/game.hpp"
#include "nimhoff/subtraction_set.hpp"

namespace nimhoff {

// Textual set descriptions (ASCII, whitespace-insensitive):
//
//   SET  := "all" | "finite:" LIST | "allbut:" LIST
//         | "periodic(t=" NAT ", prefix=" LIST ", p=" NAT ", r=" LIST ")"
//         | "lift(h=" NAT ", " SET ")"
//   LIST := empty | ITEM ("," ITEM)*
//   ITEM := NAT | NAT ".." NAT          (inclusive range)
//
// Game descriptions: "gcn: h=" NAT "; sets=[" SET ("; " SET)* "]".

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos == text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            throw ParseError(pos, std::string("expected '") + c + "'");
        }
        ++pos;
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    // Longest run of lowercase letters.
    std::string_view keyword() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    void expect_keyword(std::string_view kw) {
        skip_ws();
        const std::size_t start = pos;
        if (keyword() != kw) throw ParseError(start, "expected '" + std::string(kw) + "'");
    }

    std::uint64_t nat() {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            throw ParseError(pos, "expected a number");
        }
        std::uint64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
            if (value > (UINT64_MAX - digit) / 10) {
                throw ParseError(start, "numeric literal overflow");
            }
            value = value * 10 + digit;
            ++pos;
        }
        return value;
    }

    bool digit_ahead() {
        skip_ws();
        return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
    }

    // LIST: comma-separated items; a comma not followed by a digit belongs to
    // the surrounding form and is left unconsumed.
    std::vector<std::uint64_t> list() {
        std::vector<std::uint64_t> out;
        if (!digit_ahead()) return out;
        while (true) {
            const std::size_t item_start = pos;
            std::uint64_t lo = nat();
            std::uint64_t hi = lo;
            skip_ws();
            if (pos + 1 < text.size() && text[pos] == '.' && text[pos + 1] == '.') {
                pos += 2;
                hi = nat();
                if (hi < lo) throw ParseError(item_start, "descending range");
            }
            if (hi - lo >= set_description_limit) {
                throw ParseError(item_start, "range too large");
            }
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
            const std::size_t before_comma = pos;
            if (!try_consume(',')) break;
            if (!digit_ahead()) {
                pos = before_comma;
                break;
            }
        }
        return out;
    }
};

inline SubtractionSet parse_set(Cursor& cur) {
    const std::size_t start = cur.pos;
    const std::string_view kw = cur.keyword();
    if (kw == "all") return SubtractionSet::all();
    if (kw == "finite") {
        cur.expect(':');
        return SubtractionSet::finite(cur.list());
    }
    if (kw == "allbut") {
        cur.expect(':');
        return SubtractionSet::all_but(cur.list());
    }
    if (kw == "periodic") {
        cur.expect('(');
        cur.expect_keyword("t");
        cur.expect('=');
        const std::uint64_t threshold = cur.nat();
        cur.expect(',');
        cur.expect_keyword("prefix");
        cur.expect('=');
        std::vector<std::uint64_t> prefix = cur.list();
        cur.expect(',');
        cur.expect_keyword("p");
        cur.expect('=');
        const std::uint64_t modulus = cur.nat();
        cur.expect(',');
        cur.expect_keyword("r");
        cur.expect('=');
        std::vector<std::uint64_t> residues = cur.list();
        cur.expect(')');
        return SubtractionSet::periodic(threshold, std::move(prefix), modulus,
                                        std::move(residues));
    }
    if (kw == "lift") {
        cur.expect('(');
        cur.expect_keyword("h");
        cur.expect('=');
        const std::uint64_t h = cur.nat();
        cur.expect(',');
        SubtractionSet inner = parse_set(cur);
        cur.expect(')');
        return lift_set(inner, h);
    }
    throw ParseError(start, "unknown set form '" + std::string(kw) + "'");
}

inline std::string render_list(const std::vector<std::uint64_t>& values) {
    std::string out;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j + 1 < values.size() && values[j + 1] == values[j] + 1) ++j;
        if (!out.empty()) out += ',';
        if (j - i >= 2) {
            out += std::to_string(values[i]) + ".." + std::to_string(values[j]);
            i = j + 1;
        } else {
            out += std::to_string(values[i]);
            ++i;
        }
    }
    return out;
}

}  // namespace detail

/// Parses a full SET string; trailing characters are an error.
inline SubtractionSet parse_set_spec(std::string_view text) {
    detail::Cursor cur{text};
    SubtractionSet set = detail::parse_set(cur);
    if (!cur.at_end()) throw ParseError(cur.pos, "trailing characters");
    return set;
}

/// Canonical textual form: the short forms "all", "finite:...", "allbut:..."
/// when they apply, the periodic(...) form otherwise.
inline std::string render_set_spec(const SubtractionSet& set) {
    if (set.is_all()) return "all";
    if (set.is_finite()) return "finite:" + detail::render_list(set.prefix_members());
    if (set.is_cofinite()) return "allbut:" + detail::render_list(set.missing_below_threshold());
    std::string out = "periodic(t=" + std::to_string(set.threshold());
    out += ", prefix=" + detail::render_list(set.prefix_members());
    out += ", p=" + std::to_string(set.modulus());
    out += ", r=" + detail::render_list(set.residues());
    out += ")";
    return out;
}

/// Parses "gcn: h=<H>; sets=[<SET>; <SET>; ...]".
inline GcnSpec parse_game_spec(std::string_view text) {
    detail::Cursor cur{text};
    cur.expect_keyword("gcn");
    cur.expect(':');
    cur.expect_keyword("h");
    cur.expect('=');
    GcnSpec spec;
    spec.h = cur.nat();
    cur.expect(';');
    cur.expect_keyword("sets");
    cur.expect('=');
    cur.expect('[');
    spec.sets.push_back(detail::parse_set(cur));
    while (cur.try_consume(';')) spec.sets.push_back(detail::parse_set(cur));
    cur.expect(']');
    if (!cur.at_end()) throw ParseError(cur.pos, "trailing characters");
    validate_spec(spec);
    return spec;
}

inline std::string render_game_spec(const GcnSpec& spec) {
    std::string out = "gcn: h=" + std::to_string(spec.h) + "; sets=[";
    for (std::size_t i = 0; i < spec.sets.size(); ++i) {
        if (i > 0) out += "; ";
        out += render_set_spec(spec.sets[i]);
    }
    out += "]";
    return out;
}

}  // namespace nimhoff
