#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expreg/words.hpp"

namespace expreg {

struct Spawn {
    Symbol state;
    Symbol write;
    Move move;

    friend bool operator==(const Spawn&, const Spawn&) = default;
};

/// One entry of δ(q, θ): either an output letter or a spawned child.
using YhItem = std::variant<Symbol, Spawn>;

struct YieldHennieMachine {
    std::string name;
    Alphabet input;
    Alphabet output;
    std::vector<Symbol> states;
    Symbol initial;
    std::vector<Symbol> tape; // Θ, including Σ and the markers
    unsigned visit_bound = 1;
    std::map<std::pair<Symbol, Symbol>, std::vector<YhItem>> delta; // (state, read)

    /// Missing entries are the empty sequence.
    const std::vector<YhItem>& transition(Symbol q, Symbol read) const;
};

struct RunNode {
    enum class Kind { Internal, Letter, Empty };
    Kind kind = Kind::Empty;
    Symbol state;   // Internal
    PointedTape tape; // Internal
    Symbol letter;  // Letter
    std::vector<std::size_t> children;
};

/// Flat tree; node 0 is the root.
struct RunTree {
    std::vector<RunNode> nodes;
};

/// Throws VisitBoundExceeded, MarkerViolation, CapExceeded.
RunTree run_tree(const YieldHennieMachine& m, const Word& w, const Caps& caps = Caps::defaults());
Word yield_of(const RunTree& t);
Word evaluate_yh(const YieldHennieMachine& m, const Word& w, const Caps& caps = Caps::defaults());

/// Independent check that every node's children realize δ. Returns an empty
/// string when consistent, otherwise a description of the first mismatch.
std::string verify_run_tree(const YieldHennieMachine& m, const Word& w, const RunTree& t);
/// Largest number of internal nodes on one branch pointing at one position.
unsigned max_visits(const RunTree& t);

/// rev_prefix | subwords | distribute. Throws UnknownName.
YieldHennieMachine builtin_yh(std::string_view name);
std::vector<std::string> builtin_yh_names();

} // namespace expreg
