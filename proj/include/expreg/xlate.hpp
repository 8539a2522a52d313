#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expreg/althennie.hpp"
#include "expreg/ariadne.hpp"
#include "expreg/setinterp.hpp"
#include "expreg/yhennie.hpp"

namespace expreg {

/// Depth-first simulation of the run tree: states ⊤, Q and (q, α) for α a
/// suffix of some δ(q, θ). Local stack bound 2k+1.
AriadneTransducer yh_to_ariadne(const YieldHennieMachine& m);

/// Alternating Hennie automaton over tape letters (σ, v) with v a local view.
/// States are (q, f) for f among the declared updates plus one update f₀ that
/// no pop uses; the initial state is (q₀, f₀). Visit bound k+1.
AlternatingHennieAutomaton ariadne_to_althennie(const AriadneTransducer& a);

/// Decoded tape letter / state of a translated automaton.
struct AhTapeLetter {
    Symbol letter;
    std::vector<int> view;
};
struct AhState {
    int state;
    int update; // index into the candidate list, see ah_candidate_updates
};
std::vector<Update> ah_candidate_updates(const AriadneTransducer& a); // last entry is f₀
Symbol ah_tape_symbol(Symbol letter, const std::vector<int>& view);
AhTapeLetter ah_decode_tape(Symbol s);
Symbol ah_state_symbol(const AriadneTransducer& a, int q, int update);

// ---------------------------------------------------------------------------
// Stack encodings

/// One entry per stack element at a position: (state, direction to the next
/// element of the stack).
struct Location {
    int state;
    Move dir;
    friend bool operator==(const Location&, const Location&) = default;
};
using LocationColouring = std::vector<std::vector<Location>>; // indexed by position of ⊳w⊲

/// Canonical encoding: directions from consecutive positions, top ↻.
LocationColouring canonical_encoding(const Stack& s, std::size_t marked_length);
/// Location enumeration from (position 0, height 1); absent when it leaves the
/// tape or some location is never enumerated.
std::optional<Stack> induced_stack(const LocationColouring& a1, std::size_t initial_position = 0);

/// Bijective base-3|Q| numbering of location sequences of length <= k.
std::uint64_t encode_locations(const AriadneTransducer& a, const std::vector<Location>& seq);
std::optional<std::vector<Location>> decode_locations(const AriadneTransducer& a, std::uint64_t code);
/// |F₁| = Σ_{m<=k} (3|Q|)^m; throws CapExceeded on overflow.
std::uint64_t location_colour_count(const AriadneTransducer& a);

struct AriadneConfiguration {
    LocationColouring a1;
    std::size_t j = 1; // A₂, constant
    std::size_t stack_index = 0;
    Symbol letter;
};

std::vector<AriadneConfiguration> ariadne_configurations(const AriadneTransducer& a, const Word& w,
                                                         const Caps& caps = Caps::defaults());

/// Oracle-backed interpretation over F = F₁ × {1..n}, n = max_production.
/// Colour of a position = code(A₁ there)·n + (j−1).
SetInterpretation ariadne_to_setinterp(const AriadneTransducer& a);

// ---------------------------------------------------------------------------
// Differential testing

using Model = std::variant<SetInterpretation, YieldHennieMachine, AriadneTransducer, AlternatingHennieAutomaton>;

std::string model_kind(const Model& m);
const Alphabet& model_input(const Model& m);
/// Output word for transducers; "accept"/"reject" for automata.
std::string model_result(const Model& m, const Word& w, const Caps& caps = Caps::defaults());

struct DiffReport {
    bool ok = true;
    std::size_t words = 0;
    Word counterexample;
    std::string left;
    std::string right;
};

/// First length-lex word up to max_len where the results differ.
DiffReport difftest(const Model& left, const Model& right, const Alphabet& sigma, std::size_t max_len,
                    const Caps& caps = Caps::defaults());

} // namespace expreg
