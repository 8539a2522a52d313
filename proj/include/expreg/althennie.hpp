#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "expreg/ariadne.hpp"
#include "expreg/words.hpp"
#include "expreg/yhennie.hpp"

namespace expreg {

/// Positive Boolean formula over atoms (state, write, move).
struct PosBool {
    enum class Kind { True, False, Atom, And, Or };
    Kind kind = Kind::False;
    Spawn atom; // Atom
    std::vector<PosBool> args;

    static PosBool top() { return {Kind::True, {}, {}}; }
    static PosBool bottom() { return {Kind::False, {}, {}}; }
    static PosBool make_atom(Symbol q, Symbol write, Move m) { return {Kind::Atom, {q, write, m}, {}}; }
    static PosBool all(std::vector<PosBool> xs) { return {Kind::And, {}, std::move(xs)}; }
    static PosBool any(std::vector<PosBool> xs) { return {Kind::Or, {}, std::move(xs)}; }
};

std::string to_string(const PosBool& f);

struct AlternatingHennieAutomaton {
    std::string name;
    Alphabet input;
    std::vector<Symbol> states;
    Symbol initial;
    unsigned visit_bound = 1;
    /// Table-backed δ; consulted when `delta` is empty. Missing entries are False.
    std::map<std::pair<Symbol, Symbol>, PosBool> table;
    std::function<PosBool(Symbol q, Symbol read)> delta;
    /// Initial tape decoration of ⊳w⊲ cells; identity when empty.
    std::function<Symbol(Symbol)> decorate;

    PosBool transition(Symbol q, Symbol read) const;
};

struct AhOptions {
    /// Evaluate every branch (no short-circuit, no memo) so that every
    /// visit-bound violation is found.
    bool full_expansion = false;
};

/// Throws VisitBoundExceeded, CapExceeded.
bool ah_accepts_from(const AlternatingHennieAutomaton& h, Symbol q, const PointedTape& tape, AhOptions opts = {},
                     const Caps& caps = Caps::defaults());
bool ah_accepts(const AlternatingHennieAutomaton& h, const Word& w, AhOptions opts = {},
                const Caps& caps = Caps::defaults());

std::vector<Word> language_upto(const AriadneTransducer& a, std::size_t max_len, const Caps& caps = Caps::defaults());
std::vector<Word> language_upto(const AlternatingHennieAutomaton& h, std::size_t max_len,
                                const Caps& caps = Caps::defaults());

} // namespace expreg
