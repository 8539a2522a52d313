#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expreg/words.hpp"

namespace expreg {

struct AriadneAction {
    enum class Kind { PushLeft, PushStay, PushRight, Pop };
    Kind kind = Kind::Pop;
    int state = -1;  // push target
    int update = -1; // index into AriadneTransducer::updates for Pop

    static AriadneAction push(Move dir, int q);
    static AriadneAction pop(int update) { return {Kind::Pop, -1, update}; }
    friend bool operator==(const AriadneAction&, const AriadneAction&) = default;
};

struct AriadneStep {
    Word production;
    AriadneAction action;
    friend bool operator==(const AriadneStep&, const AriadneStep&) = default;
};

/// Partial map Q -> Q; -1 marks undefined.
using Update = std::vector<int>;

struct StackEntry {
    int state;
    std::size_t pos;
    friend bool operator==(const StackEntry&, const StackEntry&) = default;
    friend auto operator<=>(const StackEntry&, const StackEntry&) = default;
};
using Stack = std::vector<StackEntry>;

using AriadneDelta = std::function<std::optional<AriadneStep>(Symbol letter, std::span<const int> view)>;

/// Ariadne transducer; with a non-empty `accepting` set it is read as an
/// automaton (output ignored).
struct AriadneTransducer {
    std::string name;
    Alphabet input;
    Alphabet output;
    std::vector<std::string> states;
    std::vector<std::vector<bool>> order; // order[p][q]: p < q, transitively closed
    int initial = 0;
    unsigned bound = 1; // k
    std::vector<Update> updates;
    std::vector<bool> accepting;
    std::size_t max_production = 1; // longest production δ may emit
    AriadneDelta delta;

    std::size_t num_states() const noexcept { return states.size(); }
    bool less(int p, int q) const { return order[p][q]; }
    int state_id(std::string_view name) const; // throws UnknownName
    bool is_accepting(int q) const { return !accepting.empty() && accepting[q]; }

    /// Sets `order` to the transitive closure of `edges` (p < q).
    /// Throws NotWellFormed on cycles.
    void set_order(const std::vector<std::pair<int, int>>& edges);
    /// Throws NonInflationaryUpdate or NotWellFormed.
    void validate() const;
};

/// Table-backed δ, keyed by (letter, local view).
using AriadneTable = std::map<std::pair<Symbol, std::vector<int>>, AriadneStep>;
AriadneDelta table_delta(AriadneTable table);

std::vector<int> local_view(const Stack& s, std::size_t i);

/// Strict partial lexicographic order on the state sequences (positions ignored).
bool stack_less(const AriadneTransducer& a, const Stack& s, const Stack& t);

struct Successor {
    Stack stack;
    Word production;
};

/// `marked` is ⊳w⊲. Throws NonInflationaryUpdate when the successor does not
/// strictly increase.
std::optional<Successor> successor_stack(const AriadneTransducer& a, const Word& marked, const Stack& s);

struct AriadneRun {
    std::vector<Stack> stacks;      // empty unless recorded
    std::vector<Word> productions;  // one per step (the final stack has none)
    Word output;
    std::size_t length = 0;         // number of stacks
    bool accepted = false;
};

struct RunOptions {
    bool record = true;
    bool stop_on_accept = false;
};

/// Throws SafetyCapExceeded, NonInflationaryUpdate, CapExceeded.
AriadneRun run_ariadne(const AriadneTransducer& a, const Word& w, RunOptions opts = {},
                       const Caps& caps = Caps::defaults());
Word evaluate_ariadne(const AriadneTransducer& a, const Word& w, const Caps& caps = Caps::defaults());
bool accepts(const AriadneTransducer& a, const Word& w, const Caps& caps = Caps::defaults());

/// |Q|^{(|w|+2)k} + 1, saturating.
std::uint64_t safety_cap(const AriadneTransducer& a, std::size_t word_length);

/// Deterministic automaton over Σ × {0,1}^n; bit j of the mask is component j.
struct Dfa {
    Alphabet input;
    unsigned bits = 0;
    int states = 1;
    int initial = 0;
    std::vector<bool> accepting;
    std::function<int(int, Symbol, unsigned mask)> step;

    bool accepts(const Word& w, const std::vector<unsigned>& masks) const;
};

/// Accepts w iff some bit-colouring of w makes `d` accept.
AriadneTransducer build_subset_enumerator(const Dfa& d);

/// "subwords" (binary-counter transducer over {a,b,c}) and its acceptor
/// variant "subwords_acceptor". Throws UnknownName.
AriadneTransducer builtin_ariadne(std::string_view name);
std::vector<std::string> builtin_ariadne_names();

} // namespace expreg
