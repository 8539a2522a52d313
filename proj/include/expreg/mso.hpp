#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expreg/words.hpp"

namespace expreg::mso {

enum class Op {
    // core grammar
    ExistsFO, ExistsMon, Or, Not, MonEq, Less, Letter,
    // sugar, expanded by desugar()
    And, Implies, Iff, ForAllFO, ForAllMon, Equal, Succ, First, Last, True, False,
};

std::string_view op_name(Op op);
bool is_core(Op op);

class Formula;

struct Node {
    Op op;
    std::string var;                  // bound/first variable (FO or monadic)
    std::string var2;                 // second FO variable (Less, Equal, Succ, MonEq position)
    std::vector<std::string> colours; // ExistsMon / ForAllMon colour set
    std::string colour;               // MonEq colour
    Symbol letter;                    // Letter
    std::vector<Formula> args;
};

/// Immutable MSO[<,Σ] formula with F-monadic variables. Cheap to copy.
class Formula {
public:
    static Formula exists(std::string x, Formula body);
    static Formula forall(std::string x, Formula body);
    static Formula exists_mon(std::string X, std::vector<std::string> colours, Formula body);
    static Formula forall_mon(std::string X, std::vector<std::string> colours, Formula body);
    static Formula lor(std::vector<Formula> args);
    static Formula land(std::vector<Formula> args);
    static Formula lor(Formula a, Formula b) { return lor(std::vector<Formula>{std::move(a), std::move(b)}); }
    static Formula land(Formula a, Formula b) { return land(std::vector<Formula>{std::move(a), std::move(b)}); }
    static Formula lnot(Formula a);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula mon_eq(std::string X, std::string x, std::string colour);
    static Formula less(std::string x, std::string y);
    static Formula equal(std::string x, std::string y);
    static Formula succ(std::string x, std::string y);
    static Formula letter(Symbol a, std::string x);
    static Formula first(std::string x);
    static Formula last(std::string x);
    static Formula top();
    static Formula bottom();

    const Node& node() const noexcept { return *node_; }
    Op op() const noexcept { return node_->op; }
    const std::vector<Formula>& args() const noexcept { return node_->args; }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Node n);

    std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);

struct MonadicValue {
    std::vector<std::string> colours; // the variable's colour set F
    Colouring values;                 // one colour index per position
};

/// Bindings for the free variables of a formula over a fixed word.
struct Env {
    std::map<std::string, std::size_t> fo;
    std::map<std::string, MonadicValue> mon;
};

struct FreeVariables {
    std::vector<std::string> fo;
    std::vector<std::string> mon;
};
FreeVariables free_variables(const Formula& f);

/// Formula with variables resolved to slots, evaluated repeatedly against
/// different words and bindings. The free-variable signature is fixed at
/// construction: FO variables in `fo_free` order, monadic ones in `mon_free`
/// order with their colour sets.
class CompiledFormula {
public:
    CompiledFormula(const Formula& f, std::vector<std::string> fo_free,
                    std::vector<std::pair<std::string, std::vector<std::string>>> mon_free);

    bool eval(const Word& w, std::span<const std::size_t> fo,
              std::span<const Colouring* const> mon) const;

    struct CNode {
        Op op;
        int a = -1; // FO or monadic slot
        int b = -1; // second FO slot
        Colour colour = 0;
        std::size_t colour_count = 0;
        Symbol letter;
        std::vector<std::size_t> kids;
    };

private:
    std::vector<CNode> nodes_;
    std::size_t fo_slots_ = 0;
    std::size_t mon_slots_ = 0;
    std::size_t root_ = 0;
};

/// Standard semantics; monadic quantifiers enumerate every colouring.
/// Throws UnboundVariable or ColourOutOfRange.
bool evaluate(const Formula& f, const Word& w, const Env& env);

/// Rewrites every sugar node into the core grammar.
Formula desugar(const Formula& f);

/// Quantifier rank of the desugared formula (monadic quantifiers cost |F|).
unsigned quantifier_rank(const Formula& f);

/// Replaces each F-variable with |F| != 2 by ceil(log2 |F|) two-colour
/// variables named "X#1".."X#n" with colours {"0","1"}; colour index j is
/// written in binary, most significant digit first.
/// Free monadic variables are taken as two-coloured; the overload reads their
/// colour sets from `env`.
Formula encode_monadic_to_binary(const Formula& f);
Formula encode_monadic_to_binary(const Formula& f, const Env& env);
/// The matching re-encoding of a binding: returns the binary digit variables.
Env encode_env_binary(const Env& env);

/// Guards first-order quantifiers away from the two marker positions, so that
/// ⊳w⊲ satisfies the result under the marker extension of a binding iff w
/// satisfies the input. `marker_colours` assigns (f_⊳, f_⊲) to every free
/// monadic variable; missing entries raise MissingMarkerColour.
Formula relativize_to_markers(
    const Formula& f,
    const std::map<std::string, std::pair<std::string, std::string>>& marker_colours);
/// Shifts FO bindings by one and extends colourings with the marker colours.
Env extend_env_to_markers(
    const Env& env,
    const std::map<std::string, std::pair<std::string, std::string>>& marker_colours);

/// Canonical rank-q type. Equal keys iff the same rank-<=q formulas hold.
struct RankQType {
    unsigned rank = 0;
    std::string key;

    friend bool operator==(const RankQType&, const RankQType&) = default;
    friend auto operator<=>(const RankQType&, const RankQType&) = default;
};

struct TypeCaps {
    unsigned max_rank = 2;
    std::size_t max_length = 4;
};

/// Throws CapExceeded outside `caps`.
RankQType type_q(const Word& w, const Env& env, unsigned q, TypeCaps caps = {});

} // namespace expreg::mso
