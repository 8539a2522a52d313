#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expreg/mso.hpp"
#include "expreg/words.hpp"

namespace expreg {

/// A predicate on a word and one or two colourings: either an MSO formula whose
/// free monadic variables are `vars`, or an opaque procedure.
class PredicateProvider {
public:
    using Oracle = std::function<bool(const Word&, std::span<const Colouring* const>)>;

    static PredicateProvider formula(mso::Formula f, std::vector<std::string> vars);
    static PredicateProvider oracle(Oracle fn, std::size_t arity);

    bool is_oracle() const noexcept { return !formula_; }
    std::size_t arity() const noexcept { return arity_; }
    const mso::Formula& as_formula() const;
    const std::vector<std::string>& vars() const noexcept { return vars_; }

    /// Binds the colour set; must be called before eval for formula providers.
    void prepare(const std::vector<std::string>& colours);
    bool eval(const Word& w, std::span<const Colouring* const> args) const;

private:
    std::optional<mso::Formula> formula_;
    std::vector<std::string> vars_;
    std::size_t arity_ = 1;
    Oracle oracle_;
    std::shared_ptr<const mso::CompiledFormula> compiled_;
};

struct SetInterpretation {
    std::string name;
    std::vector<std::string> colours; // F
    /// |F| when the colours are not listed by name (oracle-backed only).
    std::uint64_t unnamed_colours = 0;
    Alphabet input;
    Alphabet output;
    PredicateProvider conf;
    PredicateProvider less;
    std::vector<std::pair<Symbol, PredicateProvider>> letters;
    bool marked = false;
    std::string marker_begin; // f_⊳
    std::string marker_end;   // f_⊲
    /// Optional candidate generator replacing the full colouring enumeration;
    /// every candidate is still filtered through `conf`.
    std::function<std::vector<Colouring>(const Word&)> candidates;
    std::string candidates_name; // built-in whose generator `candidates` is, for model files

    std::uint64_t colour_count() const { return colours.empty() ? unnamed_colours : colours.size(); }

    /// Compiles formula providers against `colours`. Idempotent.
    void prepare();
};

struct Configuration {
    Colouring colouring;
    Symbol letter;
};

enum class CheckMode { Auto, Check, Trust };

/// Configurations of `w` (of ⊳w⊲ for marked interpretations) in ϕ_< order.
/// Throws NotTotalOrder, PartitionViolation, CapExceeded.
std::vector<Configuration> configurations(const SetInterpretation& phi, const Word& w,
                                          CheckMode mode = CheckMode::Auto,
                                          const Caps& caps = Caps::defaults());

Word evaluate_interp(const SetInterpretation& phi, const Word& w,
                     CheckMode mode = CheckMode::Auto, const Caps& caps = Caps::defaults());

/// Marker wrapper: relativizes every formula and pins the marker colours to
/// the first colour. Throws OracleBacked or AlreadyMarked.
SetInterpretation to_marked(const SetInterpretation& phi);

/// rev_prefix | subwords | distribute. Throws UnknownName.
SetInterpretation builtin_interpretation(std::string_view name);
std::vector<std::string> builtin_interpretation_names();

} // namespace expreg
