#include "expreg/setinterp.hpp"

#include <algorithm>

#include "expreg/error.hpp"

namespace expreg {

using mso::Formula;
using F = mso::Formula;

PredicateProvider PredicateProvider::formula(mso::Formula f, std::vector<std::string> vars) {
    PredicateProvider p;
    p.arity_ = vars.size();
    p.formula_ = std::move(f);
    p.vars_ = std::move(vars);
    return p;
}

PredicateProvider PredicateProvider::oracle(Oracle fn, std::size_t arity) {
    PredicateProvider p;
    p.arity_ = arity;
    p.oracle_ = std::move(fn);
    return p;
}

const mso::Formula& PredicateProvider::as_formula() const {
    if (!formula_) throw Error("OracleBacked", "predicate is a procedure");
    return *formula_;
}

void PredicateProvider::prepare(const std::vector<std::string>& colours) {
    if (!formula_ || compiled_) return;
    std::vector<std::pair<std::string, std::vector<std::string>>> sig;
    for (const auto& v : vars_) sig.emplace_back(v, colours);
    compiled_ = std::make_shared<const mso::CompiledFormula>(*formula_, std::vector<std::string>{}, sig);
}

bool PredicateProvider::eval(const Word& w, std::span<const Colouring* const> args) const {
    if (args.size() != arity_) throw Error("ArityMismatch", "predicate arity " + std::to_string(arity_));
    if (oracle_) return oracle_(w, args);
    if (!compiled_) throw Error("NotPrepared", "formula predicate used before prepare()");
    return compiled_->eval(w, {}, args);
}

void SetInterpretation::prepare() {
    conf.prepare(colours);
    less.prepare(colours);
    for (auto& [g, p] : letters) p.prepare(colours);
}

namespace {

std::string colouring_string(const SetInterpretation& phi, const Colouring& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i)
        out += (i ? "," : "") + (c[i] < phi.colours.size() ? phi.colours[c[i]] : std::to_string(c[i]));
    return out;
}

std::size_t colour_index(const SetInterpretation& phi, const std::string& c) {
    const auto it = std::find(phi.colours.begin(), phi.colours.end(), c);
    if (it == phi.colours.end()) throw Error("ColourOutOfRange", c);
    return static_cast<std::size_t>(it - phi.colours.begin());
}

std::vector<Colouring> enumerate_colourings(const SetInterpretation& phi, std::size_t n, const Caps& caps) {
    const std::uint64_t k = phi.colour_count();
    std::size_t lo = 0, hi = n;
    Colouring c(n, 0);
    if (phi.marked && n >= 2) {
        c.front() = colour_index(phi, phi.marker_begin);
        c.back() = colour_index(phi, phi.marker_end);
        lo = 1;
        hi = n - 1;
    }
    std::uint64_t total = 1;
    for (std::size_t i = lo; i < hi; ++i) {
        total *= k;
        if (total > caps.max_colourings)
            throw Error("CapExceeded", "more than " + std::to_string(caps.max_colourings) + " colourings");
    }
    std::vector<Colouring> out;
    out.reserve(total);
    while (true) {
        out.push_back(c);
        std::size_t i = lo;
        while (i < hi && ++c[i] == k) c[i++] = 0;
        if (i == hi) break;
    }
    return out;
}

template <class Less>
void merge_sort(std::vector<std::size_t>& idx, Less less) {
    if (idx.size() < 2) return;
    std::vector<std::size_t> buf(idx.size());
    for (std::size_t width = 1; width < idx.size(); width *= 2) {
        for (std::size_t lo = 0; lo < idx.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, idx.size());
            const std::size_t hi = std::min(lo + 2 * width, idx.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) buf[k++] = less(idx[j], idx[i]) ? idx[j++] : idx[i++];
            while (i < mid) buf[k++] = idx[i++];
            while (j < hi) buf[k++] = idx[j++];
        }
        idx.swap(buf);
    }
}

} // namespace

std::vector<Configuration> configurations(const SetInterpretation& phi_in, const Word& w, CheckMode mode,
                                          const Caps& caps) {
    SetInterpretation phi = phi_in;
    phi.prepare();
    for (Symbol s : w)
        if (!phi.input.contains(s)) throw Error("InvalidWord", s.name() + " is not an input letter");
    const Word target = phi.marked ? MarkedWord(w).letters() : w;

    std::vector<Colouring> candidates =
        phi.candidates ? phi.candidates(target) : enumerate_colourings(phi, target.size(), caps);

    std::vector<Configuration> confs;
    for (auto& c : candidates) {
        if (c.size() != target.size()) throw Error("ColourOutOfRange", "candidate has the wrong length");
        const Colouring* arg = &c;
        if (!phi.conf.eval(target, {&arg, 1})) continue;
        std::optional<Symbol> letter;
        for (const auto& [g, p] : phi.letters) {
            if (!p.eval(target, {&arg, 1})) continue;
            if (letter)
                throw Error("PartitionViolation",
                            "two letters for configuration " + colouring_string(phi, c));
            letter = g;
        }
        if (!letter)
            throw Error("PartitionViolation", "no letter for configuration " + colouring_string(phi, c));
        confs.push_back({std::move(c), *letter});
    }

    auto less = [&](std::size_t i, std::size_t j) {
        const Colouring* args[2] = {&confs[i].colouring, &confs[j].colouring};
        return phi.less.eval(target, args);
    };
    std::vector<std::size_t> idx(confs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    merge_sort(idx, less);

    auto fail = [&](std::size_t i, std::size_t j) {
        throw Error("NotTotalOrder", colouring_string(phi, confs[i].colouring) + " vs " +
                                         colouring_string(phi, confs[j].colouring));
    };
    const bool full = mode == CheckMode::Check || (mode == CheckMode::Auto && confs.size() < caps.check_below);
    if (full) {
        for (std::size_t a = 0; a < idx.size(); ++a) {
            if (less(idx[a], idx[a])) fail(idx[a], idx[a]);
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (!less(idx[a], idx[b]) || less(idx[b], idx[a])) fail(idx[a], idx[b]);
        }
    } else {
        for (std::size_t a = 0; a + 1 < idx.size(); ++a)
            if (!less(idx[a], idx[a + 1]) || less(idx[a + 1], idx[a])) fail(idx[a], idx[a + 1]);
    }

    std::vector<Configuration> out;
    out.reserve(confs.size());
    for (auto i : idx) out.push_back(std::move(confs[i]));
    return out;
}

Word evaluate_interp(const SetInterpretation& phi, const Word& w, CheckMode mode, const Caps& caps) {
    Word out;
    for (const auto& c : configurations(phi, w, mode, caps)) out.push_back(c.letter);
    return out;
}

SetInterpretation to_marked(const SetInterpretation& phi) {
    if (phi.marked) throw Error("AlreadyMarked", phi.name);
    if (phi.conf.is_oracle() || phi.less.is_oracle())
        throw Error("OracleBacked", phi.name + " has procedural predicates");
    for (const auto& [g, p] : phi.letters)
        if (p.is_oracle()) throw Error("OracleBacked", phi.name + " has procedural predicates");

    const std::string f0 = phi.colours.front();
    auto relativize = [&](const PredicateProvider& p) {
        std::map<std::string, std::pair<std::string, std::string>> mc;
        for (const auto& v : p.vars()) mc[v] = {f0, f0};
        return PredicateProvider::formula(mso::relativize_to_markers(p.as_formula(), mc), p.vars());
    };

    SetInterpretation out;
    out.name = phi.name;
    out.colours = phi.colours;
    out.input = phi.input;
    out.output = phi.output;
    out.marked = true;
    out.marker_begin = f0;
    out.marker_end = f0;
    out.candidates_name = phi.candidates_name;
    const std::string& X = phi.conf.vars().front();
    std::vector<F> conj = {
        F::forall("_m", F::implies(F::first("_m"), F::mon_eq(X, "_m", f0))),
        F::forall("_m", F::implies(F::last("_m"), F::mon_eq(X, "_m", f0))),
        relativize(phi.conf).as_formula(),
    };
    out.conf = PredicateProvider::formula(F::land(std::move(conj)), phi.conf.vars());
    out.less = relativize(phi.less);
    for (const auto& [g, p] : phi.letters) out.letters.emplace_back(g, relativize(p));
    if (phi.candidates) {
        const Colour c0 = 0;
        out.candidates = [inner = phi.candidates, c0](const Word& marked) {
            std::vector<Colouring> cs = inner(Word(marked.begin() + 1, marked.end() - 1));
            for (auto& c : cs) {
                c.insert(c.begin(), c0);
                c.push_back(c0);
            }
            return cs;
        };
    }
    return out;
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

F is(const std::string& X, const std::string& x, const std::string& c) { return F::mon_eq(X, x, c); }

F exactly_one(const std::string& X, const std::string& c, const std::string& x, const std::string& y) {
    return F::exists(x, F::land(is(X, x, c), F::forall(y, F::implies(is(X, y, c), F::equal(y, x)))));
}

F any_of(const std::string& X, const std::string& x, std::initializer_list<const char*> cs) {
    std::vector<F> out;
    for (const char* c : cs) out.push_back(is(X, x, c));
    return F::lor(std::move(out));
}

std::vector<std::pair<Symbol, PredicateProvider>> letter_at(const Alphabet& out, const std::string& colour) {
    std::vector<std::pair<Symbol, PredicateProvider>> letters;
    for (Symbol s : out.symbols())
        letters.emplace_back(
            s, PredicateProvider::formula(F::exists("x", F::land(is("X", "x", colour), F::letter(s, "x"))), {"X"}));
    return letters;
}

SetInterpretation rev_prefix() {
    SetInterpretation phi;
    phi.name = "rev_prefix";
    phi.colours = {"gray", "red", "black"};
    phi.input = Alphabet::of("abc");
    phi.output = phi.input;
    phi.conf = PredicateProvider::formula(
        F::land({exactly_one("X", "black", "x", "y"), exactly_one("X", "red", "x", "y"),
                 F::exists("x", F::exists("y", F::land({is("X", "x", "black"), is("X", "y", "red"), F::less("y", "x")})))}),
        {"X"});
    const F order = F::lor(F::less("x1", "x2"), F::land(F::equal("x1", "x2"), F::less("y2", "y1")));
    phi.less = PredicateProvider::formula(
        F::exists("x1", F::exists("y1", F::exists("x2", F::exists("y2",
            F::land({is("X", "x1", "black"), is("X", "y1", "red"), is("Y", "x2", "black"), is("Y", "y2", "red"), order}))))),
        {"X", "Y"});
    phi.letters = letter_at(phi.output, "red");
    return phi;
}

SetInterpretation subwords() {
    SetInterpretation phi;
    phi.name = "subwords";
    phi.colours = {"gray", "red", "black"};
    phi.input = Alphabet::of("abc");
    phi.output = phi.input;
    phi.conf = PredicateProvider::formula(exactly_one("X", "red", "x", "y"), {"X"});
    auto same = [](const std::string& z) {
        return F::lor({F::land(is("X", z, "gray"), is("Y", z, "gray")), F::land(is("X", z, "red"), is("Y", z, "red")),
                       F::land(is("X", z, "black"), is("Y", z, "black"))});
    };
    const F smaller = F::lor(F::land(is("X", "x", "gray"), any_of("Y", "x", {"red", "black"})),
                             F::land(is("X", "x", "red"), is("Y", "x", "black")));
    phi.less = PredicateProvider::formula(
        F::exists("x", F::land(smaller, F::forall("y", F::implies(F::less("y", "x"), same("y"))))), {"X", "Y"});
    phi.letters = letter_at(phi.output, "red");
    return phi;
}

SetInterpretation distribute() {
    SetInterpretation phi;
    phi.name = "distribute";
    phi.colours = {"g", "s", "S", "H"};
    phi.input = Alphabet::of("abcdef#");
    phi.output = phi.input;
    const Symbol hash("#");
    auto sharp = [&](const std::string& x) { return F::letter(hash, x); };
    auto sel = [](const std::string& X, const std::string& x) { return any_of(X, x, {"s", "S", "H"}); };
    auto cur = [](const std::string& X, const std::string& x) { return any_of(X, x, {"S", "H"}); };
    auto between = [](const std::string& a, const std::string& z, const std::string& b) {
        return F::land(F::lnot(F::less(z, a)), F::lnot(F::less(b, z)));
    };
    auto same_block = [&](const std::string& x, const std::string& y) {
        return F::land({F::lnot(sharp(x)), F::lnot(sharp(y)),
                        F::lnot(F::exists("z", F::land(F::lor(between(x, "z", y), between(y, "z", x)), sharp("z"))))});
    };
    const F well_formed = F::land({
        F::exists("x", F::lnot(sharp("x"))),
        F::forall("x", F::implies(F::lor(F::first("x"), F::last("x")), F::lnot(sharp("x")))),
        F::lnot(F::exists("x", F::exists("y", F::land({F::succ("x", "y"), sharp("x"), sharp("y")})))),
    });
    const F non_minimal =
        F::exists("y", F::exists("z", F::land({sel("X", "y"), F::succ("z", "y"), F::lnot(sharp("z"))})));
    phi.conf = PredicateProvider::formula(
        F::land({
            well_formed,
            F::forall("x", F::implies(sharp("x"), is("X", "x", "g"))),
            F::forall("x", F::implies(F::lnot(sharp("x")), F::exists("y", F::land(same_block("x", "y"), sel("X", "y"))))),
            F::forall("x", F::forall("y", F::implies(F::land({sel("X", "x"), sel("X", "y"), same_block("x", "y")}),
                                                     F::equal("x", "y")))),
            F::exists("x", cur("X", "x")),
            F::forall("x", F::forall("y", F::implies(F::land(cur("X", "x"), cur("X", "y")), F::equal("x", "y")))),
            F::forall("x", F::implies(is("X", "x", "H"),
                                      F::land(F::lnot(F::exists("z", F::land(F::less("z", "x"), sharp("z")))), non_minimal))),
        }),
        {"X"});
    const F less_vec = F::exists(
        "x", F::land({sel("X", "x"), F::lnot(sel("Y", "x")),
                      F::forall("y", F::implies(F::less("y", "x"), F::iff(sel("X", "y"), sel("Y", "y"))))}));
    const F same_vec = F::forall("x", F::iff(sel("X", "x"), sel("Y", "x")));
    const F has_h_x = F::exists("x", is("X", "x", "H"));
    const F has_h_y = F::exists("x", is("Y", "x", "H"));
    const F s_before = F::exists("x", F::exists("y", F::land({is("X", "x", "S"), is("Y", "y", "S"), F::less("x", "y")})));
    phi.less = PredicateProvider::formula(
        F::lor(less_vec, F::land(same_vec, F::lor(F::land(has_h_x, F::lnot(has_h_y)), s_before))), {"X", "Y"});
    phi.candidates_name = "distribute";
    phi.candidates = [hash](const Word& w) {
        // one selected position per block, then which of them is current
        std::vector<std::vector<std::size_t>> blocks(1);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == hash) blocks.emplace_back();
            else blocks.back().push_back(i);
        }
        std::vector<Colouring> out;
        for (const auto& b : blocks)
            if (b.empty()) return out;
        std::vector<std::size_t> choice(blocks.size(), 0);
        while (true) {
            Colouring base(w.size(), 0);
            for (std::size_t b = 0; b < blocks.size(); ++b) base[blocks[b][choice[b]]] = 1;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                Colouring c = base;
                c[blocks[b][choice[b]]] = 2;
                out.push_back(std::move(c));
            }
            Colouring h = base;
            h[blocks[0][choice[0]]] = 3;
            out.push_back(std::move(h));
            std::size_t b = 0;
            while (b < blocks.size() && ++choice[b] == blocks[b].size()) choice[b++] = 0;
            if (b == blocks.size()) break;
        }
        return out;
    };
    for (Symbol s : phi.output.symbols()) {
        if (s == hash)
            phi.letters.emplace_back(s, PredicateProvider::formula(F::exists("x", is("X", "x", "H")), {"X"}));
        else
            phi.letters.emplace_back(
                s, PredicateProvider::formula(F::exists("x", F::land(is("X", "x", "S"), F::letter(s, "x"))), {"X"}));
    }
    return phi;
}

} // namespace

std::vector<std::string> builtin_interpretation_names() { return {"rev_prefix", "subwords", "distribute"}; }

SetInterpretation builtin_interpretation(std::string_view name) {
    SetInterpretation phi;
    if (name == "rev_prefix") phi = rev_prefix();
    else if (name == "subwords") phi = subwords();
    else if (name == "distribute") phi = distribute();
    else throw Error("UnknownName", "no built-in interpretation " + std::string(name));
    phi.prepare();
    return phi;
}

} // namespace expreg
