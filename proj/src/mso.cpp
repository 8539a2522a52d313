#include "expreg/mso.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace expreg::mso {

std::string_view op_name(Op op) {
    switch (op) {
    case Op::ExistsFO: return "exists";
    case Op::ExistsMon: return "existsMon";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::MonEq: return "monEq";
    case Op::Less: return "less";
    case Op::Letter: return "letter";
    case Op::And: return "and";
    case Op::Implies: return "implies";
    case Op::Iff: return "iff";
    case Op::ForAllFO: return "forall";
    case Op::ForAllMon: return "forallMon";
    case Op::Equal: return "equal";
    case Op::Succ: return "succ";
    case Op::First: return "first";
    case Op::Last: return "last";
    case Op::True: return "true";
    case Op::False: return "false";
    }
    return "?";
}

bool is_core(Op op) {
    switch (op) {
    case Op::ExistsFO:
    case Op::ExistsMon:
    case Op::Or:
    case Op::Not:
    case Op::MonEq:
    case Op::Less:
    case Op::Letter: return true;
    default: return false;
    }
}

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::exists(std::string x, Formula body) {
    return make({Op::ExistsFO, std::move(x), {}, {}, {}, {}, {std::move(body)}});
}
Formula Formula::forall(std::string x, Formula body) {
    return make({Op::ForAllFO, std::move(x), {}, {}, {}, {}, {std::move(body)}});
}
Formula Formula::exists_mon(std::string X, std::vector<std::string> colours, Formula body) {
    if (colours.empty()) throw Error("InvalidFormula", "empty colour set for " + X);
    return make({Op::ExistsMon, std::move(X), {}, std::move(colours), {}, {}, {std::move(body)}});
}
Formula Formula::forall_mon(std::string X, std::vector<std::string> colours, Formula body) {
    if (colours.empty()) throw Error("InvalidFormula", "empty colour set for " + X);
    return make({Op::ForAllMon, std::move(X), {}, std::move(colours), {}, {}, {std::move(body)}});
}
Formula Formula::lor(std::vector<Formula> args) {
    if (args.empty()) return bottom();
    if (args.size() == 1) return args.front();
    return make({Op::Or, {}, {}, {}, {}, {}, std::move(args)});
}
Formula Formula::land(std::vector<Formula> args) {
    if (args.empty()) return top();
    if (args.size() == 1) return args.front();
    return make({Op::And, {}, {}, {}, {}, {}, std::move(args)});
}
Formula Formula::lnot(Formula a) { return make({Op::Not, {}, {}, {}, {}, {}, {std::move(a)}}); }
Formula Formula::implies(Formula a, Formula b) {
    return make({Op::Implies, {}, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::iff(Formula a, Formula b) {
    return make({Op::Iff, {}, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::mon_eq(std::string X, std::string x, std::string colour) {
    return make({Op::MonEq, std::move(X), std::move(x), {}, std::move(colour), {}, {}});
}
Formula Formula::less(std::string x, std::string y) {
    return make({Op::Less, std::move(x), std::move(y), {}, {}, {}, {}});
}
Formula Formula::equal(std::string x, std::string y) {
    return make({Op::Equal, std::move(x), std::move(y), {}, {}, {}, {}});
}
Formula Formula::succ(std::string x, std::string y) {
    return make({Op::Succ, std::move(x), std::move(y), {}, {}, {}, {}});
}
Formula Formula::letter(Symbol a, std::string x) {
    return make({Op::Letter, std::move(x), {}, {}, {}, a, {}});
}
Formula Formula::first(std::string x) { return make({Op::First, std::move(x), {}, {}, {}, {}, {}}); }
Formula Formula::last(std::string x) { return make({Op::Last, std::move(x), {}, {}, {}, {}, {}}); }
Formula Formula::top() { return make({Op::True, {}, {}, {}, {}, {}, {}}); }
Formula Formula::bottom() { return make({Op::False, {}, {}, {}, {}, {}, {}}); }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.op == y.op && x.var == y.var && x.var2 == y.var2 && x.colours == y.colours &&
           x.colour == y.colour && x.letter == y.letter && x.args == y.args;
}

std::string to_string(const Formula& f) {
    const Node& n = f.node();
    auto join = [&](std::string_view sep) {
        std::string out = "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += sep;
            out += to_string(n.args[i]);
        }
        return out + ")";
    };
    auto colours = [&] {
        std::string out = "{";
        for (std::size_t i = 0; i < n.colours.size(); ++i) out += (i ? "," : "") + n.colours[i];
        return out + "}";
    };
    switch (n.op) {
    case Op::ExistsFO: return "∃" + n.var + "." + to_string(n.args[0]);
    case Op::ForAllFO: return "∀" + n.var + "." + to_string(n.args[0]);
    case Op::ExistsMon: return "∃" + n.var + colours() + "." + to_string(n.args[0]);
    case Op::ForAllMon: return "∀" + n.var + colours() + "." + to_string(n.args[0]);
    case Op::Or: return join(" ∨ ");
    case Op::And: return join(" ∧ ");
    case Op::Implies: return join(" → ");
    case Op::Iff: return join(" ↔ ");
    case Op::Not: return "¬" + to_string(n.args[0]);
    case Op::MonEq: return n.var + "(" + n.var2 + ")=" + n.colour;
    case Op::Less: return n.var + "<" + n.var2;
    case Op::Equal: return n.var + "=" + n.var2;
    case Op::Succ: return "succ(" + n.var + "," + n.var2 + ")";
    case Op::Letter: return n.letter.name() + "(" + n.var + ")";
    case Op::First: return "first(" + n.var + ")";
    case Op::Last: return "last(" + n.var + ")";
    case Op::True: return "⊤";
    case Op::False: return "⊥";
    }
    return "?";
}

namespace {

bool binds_fo(Op op) { return op == Op::ExistsFO || op == Op::ForAllFO; }
bool binds_mon(Op op) { return op == Op::ExistsMon || op == Op::ForAllMon; }

void collect_free(const Formula& f, std::vector<std::string>& bound_fo,
                  std::vector<std::string>& bound_mon, std::set<std::string>& fo,
                  std::set<std::string>& mon) {
    const Node& n = f.node();
    auto use_fo = [&](const std::string& x) {
        if (!x.empty() && std::find(bound_fo.begin(), bound_fo.end(), x) == bound_fo.end())
            fo.insert(x);
    };
    switch (n.op) {
    case Op::MonEq:
        if (std::find(bound_mon.begin(), bound_mon.end(), n.var) == bound_mon.end())
            mon.insert(n.var);
        use_fo(n.var2);
        return;
    case Op::Less:
    case Op::Equal:
    case Op::Succ:
        use_fo(n.var);
        use_fo(n.var2);
        return;
    case Op::Letter:
    case Op::First:
    case Op::Last: use_fo(n.var); return;
    default: break;
    }
    if (binds_fo(n.op)) bound_fo.push_back(n.var);
    if (binds_mon(n.op)) bound_mon.push_back(n.var);
    for (const auto& a : n.args) collect_free(a, bound_fo, bound_mon, fo, mon);
    if (binds_fo(n.op)) bound_fo.pop_back();
    if (binds_mon(n.op)) bound_mon.pop_back();
}

} // namespace

FreeVariables free_variables(const Formula& f) {
    std::vector<std::string> bfo, bmon;
    std::set<std::string> fo, mon;
    collect_free(f, bfo, bmon, fo, mon);
    return {{fo.begin(), fo.end()}, {mon.begin(), mon.end()}};
}

// ---------------------------------------------------------------------------
// Compilation and evaluation

namespace {

struct Scope {
    std::vector<std::pair<std::string, int>> fo;
    struct Mon {
        std::string name;
        int slot;
        std::vector<std::string> colours;
    };
    std::vector<Mon> mon;

    int find_fo(const std::string& x) const {
        for (auto it = fo.rbegin(); it != fo.rend(); ++it)
            if (it->first == x) return it->second;
        throw Error("UnboundVariable", "first-order variable " + x);
    }
    const Mon& find_mon(const std::string& X) const {
        for (auto it = mon.rbegin(); it != mon.rend(); ++it)
            if (it->name == X) return *it;
        throw Error("UnboundVariable", "monadic variable " + X);
    }
};

using CNode = CompiledFormula::CNode;

struct Compiler {
    std::vector<CNode>& nodes;
    Scope scope;
    int next_fo = 0;
    int next_mon = 0;

    std::size_t compile(const Formula& f) {
        const Node& n = f.node();
        CNode c;
        c.op = n.op;
        switch (n.op) {
        case Op::MonEq: {
            const auto& m = scope.find_mon(n.var);
            c.a = m.slot;
            c.b = scope.find_fo(n.var2);
            const auto it = std::find(m.colours.begin(), m.colours.end(), n.colour);
            if (it == m.colours.end())
                throw Error("ColourOutOfRange", n.colour + " is not a colour of " + n.var);
            c.colour = static_cast<Colour>(it - m.colours.begin());
            break;
        }
        case Op::Less:
        case Op::Equal:
        case Op::Succ:
            c.a = scope.find_fo(n.var);
            c.b = scope.find_fo(n.var2);
            break;
        case Op::Letter:
            c.a = scope.find_fo(n.var);
            c.letter = n.letter;
            break;
        case Op::First:
        case Op::Last: c.a = scope.find_fo(n.var); break;
        case Op::ExistsFO:
        case Op::ForAllFO: {
            c.a = next_fo++;
            scope.fo.emplace_back(n.var, c.a);
            c.kids.push_back(compile(n.args[0]));
            scope.fo.pop_back();
            break;
        }
        case Op::ExistsMon:
        case Op::ForAllMon: {
            c.a = next_mon++;
            c.colour_count = n.colours.size();
            scope.mon.push_back({n.var, c.a, n.colours});
            c.kids.push_back(compile(n.args[0]));
            scope.mon.pop_back();
            break;
        }
        default:
            for (const auto& a : n.args) c.kids.push_back(compile(a));
            break;
        }
        nodes.push_back(std::move(c));
        return nodes.size() - 1;
    }
};

struct EvalState {
    const Word& w;
    std::vector<std::size_t> fo;
    std::vector<const Colouring*> mon;
    std::vector<Colouring> storage;
};

bool eval_node(const std::vector<CNode>& nodes, std::size_t idx, EvalState& st) {
    const CNode& c = nodes[idx];
    const std::size_t n = st.w.size();
    switch (c.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::MonEq: return (*st.mon[c.a])[st.fo[c.b]] == c.colour;
    case Op::Less: return st.fo[c.a] < st.fo[c.b];
    case Op::Equal: return st.fo[c.a] == st.fo[c.b];
    case Op::Succ: return st.fo[c.a] + 1 == st.fo[c.b];
    case Op::Letter: return st.w[st.fo[c.a]] == c.letter;
    case Op::First: return st.fo[c.a] == 0;
    case Op::Last: return st.fo[c.a] + 1 == n;
    case Op::Not: return !eval_node(nodes, c.kids[0], st);
    case Op::Or:
        for (auto k : c.kids)
            if (eval_node(nodes, k, st)) return true;
        return false;
    case Op::And:
        for (auto k : c.kids)
            if (!eval_node(nodes, k, st)) return false;
        return true;
    case Op::Implies:
        return !eval_node(nodes, c.kids[0], st) || eval_node(nodes, c.kids[1], st);
    case Op::Iff: return eval_node(nodes, c.kids[0], st) == eval_node(nodes, c.kids[1], st);
    case Op::ExistsFO:
    case Op::ForAllFO: {
        const bool want = c.op == Op::ExistsFO;
        for (std::size_t i = 0; i < n; ++i) {
            st.fo[c.a] = i;
            if (eval_node(nodes, c.kids[0], st) == want) return want;
        }
        return !want;
    }
    case Op::ExistsMon:
    case Op::ForAllMon: {
        const bool want = c.op == Op::ExistsMon;
        Colouring& col = st.storage[c.a];
        col.assign(n, 0);
        st.mon[c.a] = &col;
        while (true) {
            if (eval_node(nodes, c.kids[0], st) == want) return want;
            std::size_t i = 0;
            while (i < n && ++col[i] == c.colour_count) col[i++] = 0;
            if (i == n) break;
        }
        return !want;
    }
    }
    return false;
}

} // namespace

CompiledFormula::CompiledFormula(
    const Formula& f, std::vector<std::string> fo_free,
    std::vector<std::pair<std::string, std::vector<std::string>>> mon_free) {
    Compiler comp{nodes_, {}, 0, 0};
    for (auto& x : fo_free) comp.scope.fo.emplace_back(std::move(x), comp.next_fo++);
    for (auto& [X, colours] : mon_free)
        comp.scope.mon.push_back({std::move(X), comp.next_mon++, std::move(colours)});
    root_ = comp.compile(f);
    fo_slots_ = static_cast<std::size_t>(comp.next_fo);
    mon_slots_ = static_cast<std::size_t>(comp.next_mon);
}

bool CompiledFormula::eval(const Word& w, std::span<const std::size_t> fo,
                           std::span<const Colouring* const> mon) const {
    EvalState st{w, std::vector<std::size_t>(fo_slots_, 0),
                 std::vector<const Colouring*>(mon_slots_, nullptr),
                 std::vector<Colouring>(mon_slots_)};
    std::copy(fo.begin(), fo.end(), st.fo.begin());
    std::copy(mon.begin(), mon.end(), st.mon.begin());
    return eval_node(nodes_, root_, st);
}

bool evaluate(const Formula& f, const Word& w, const Env& env) {
    const FreeVariables free = free_variables(f);
    std::vector<std::string> fo_names;
    std::vector<std::size_t> fo_vals;
    for (const auto& x : free.fo) {
        const auto it = env.fo.find(x);
        if (it == env.fo.end()) throw Error("UnboundVariable", "first-order variable " + x);
        if (it->second >= w.size())
            throw Error("UnboundVariable", x + " is bound outside the word");
        fo_names.push_back(x);
        fo_vals.push_back(it->second);
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> mon_sig;
    std::vector<const Colouring*> mon_vals;
    for (const auto& X : free.mon) {
        const auto it = env.mon.find(X);
        if (it == env.mon.end()) throw Error("UnboundVariable", "monadic variable " + X);
        const MonadicValue& v = it->second;
        if (v.values.size() != w.size())
            throw Error("ColourOutOfRange", X + " does not colour every position");
        for (Colour c : v.values)
            if (c >= v.colours.size()) throw Error("ColourOutOfRange", "colour index of " + X);
        mon_sig.emplace_back(X, v.colours);
        mon_vals.push_back(&v.values);
    }
    const CompiledFormula compiled(f, std::move(fo_names), std::move(mon_sig));
    return compiled.eval(w, fo_vals, mon_vals);
}

// ---------------------------------------------------------------------------
// Syntactic transformations

namespace {

struct Fresh {
    int counter = 0;
    std::string next() { return "_v" + std::to_string(++counter); }
};

Formula desugar_rec(const Formula& f, Fresh& fresh) {
    using F = Formula;
    const Node& n = f.node();
    auto sub = [&](std::size_t i) { return desugar_rec(n.args[i], fresh); };
    auto core_and = [](std::vector<Formula> xs) {
        for (auto& x : xs) x = F::lnot(std::move(x));
        return F::lnot(F::lor(std::move(xs)));
    };
    switch (n.op) {
    case Op::MonEq:
    case Op::Less:
    case Op::Letter: return f;
    case Op::ExistsFO: return F::exists(n.var, sub(0));
    case Op::ExistsMon: return F::exists_mon(n.var, n.colours, sub(0));
    case Op::Not: return F::lnot(sub(0));
    case Op::Or: {
        std::vector<Formula> xs;
        for (std::size_t i = 0; i < n.args.size(); ++i) xs.push_back(sub(i));
        Formula acc = xs.back();
        for (std::size_t i = xs.size() - 1; i-- > 0;)
            acc = Formula(F::lor(std::vector<Formula>{xs[i], acc}));
        return acc;
    }
    case Op::And: {
        std::vector<Formula> xs;
        for (std::size_t i = 0; i < n.args.size(); ++i) xs.push_back(F::lnot(sub(i)));
        Formula acc = xs.back();
        for (std::size_t i = xs.size() - 1; i-- > 0;) acc = F::lor(std::vector<Formula>{xs[i], acc});
        return F::lnot(acc);
    }
    case Op::Implies: return F::lor(std::vector<Formula>{F::lnot(sub(0)), sub(1)});
    case Op::Iff: {
        const Formula a = sub(0), b = sub(1);
        return core_and({F::lor(std::vector<Formula>{F::lnot(a), b}),
                         F::lor(std::vector<Formula>{F::lnot(b), a})});
    }
    case Op::ForAllFO: return F::lnot(F::exists(n.var, F::lnot(sub(0))));
    case Op::ForAllMon: return F::lnot(F::exists_mon(n.var, n.colours, F::lnot(sub(0))));
    case Op::Equal:
        return F::lnot(F::lor(std::vector<Formula>{F::less(n.var, n.var2), F::less(n.var2, n.var)}));
    case Op::Succ: {
        const std::string z = fresh.next();
        return core_and({F::less(n.var, n.var2),
                         F::lnot(F::exists(z, core_and({F::less(n.var, z), F::less(z, n.var2)})))});
    }
    case Op::First: {
        const std::string z = fresh.next();
        return F::lnot(F::exists(z, F::less(z, n.var)));
    }
    case Op::Last: {
        const std::string z = fresh.next();
        return F::lnot(F::exists(z, F::less(n.var, z)));
    }
    case Op::True: {
        const std::string z = fresh.next();
        return F::lnot(F::exists(z, F::less(z, z)));
    }
    case Op::False: {
        const std::string z = fresh.next();
        return F::exists(z, F::less(z, z));
    }
    }
    return f;
}

unsigned rank_core(const Formula& f) {
    const Node& n = f.node();
    switch (n.op) {
    case Op::ExistsFO: return rank_core(n.args[0]) + 1;
    case Op::ExistsMon: return rank_core(n.args[0]) + static_cast<unsigned>(n.colours.size());
    case Op::Not:
    case Op::Or: {
        unsigned r = 0;
        for (const auto& a : n.args) r = std::max(r, rank_core(a));
        return r;
    }
    default: return 0;
    }
}

unsigned bits_for(std::size_t colours) {
    unsigned n = 0;
    while ((std::size_t{1} << n) < colours) ++n;
    return n;
}

std::string digit_var(const std::string& X, unsigned i) { return X + "#" + std::to_string(i + 1); }

Formula digits_equal(const std::string& X, unsigned bits, std::size_t value, const std::string& x) {
    std::vector<Formula> conj;
    for (unsigned i = 0; i < bits; ++i) {
        const bool bit = (value >> (bits - 1 - i)) & 1U;
        conj.push_back(Formula::mon_eq(digit_var(X, i), x, bit ? "1" : "0"));
    }
    return Formula::land(std::move(conj));
}

struct BinaryEncoder {
    std::vector<std::pair<std::string, std::vector<std::string>>> scope;
    std::map<std::string, std::vector<std::string>> free_colours;
    Fresh fresh;

    const std::vector<std::string>* colours_of(const std::string& X) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == X) return &it->second;
        return nullptr;
    }

    Formula run(const Formula& f) {
        const Node& n = f.node();
        switch (n.op) {
        case Op::MonEq: {
            const auto* colours = colours_of(n.var);
            if (!colours) throw Error("UnboundVariable", "monadic variable " + n.var);
            if (colours->size() == 2) return f;
            const auto it = std::find(colours->begin(), colours->end(), n.colour);
            if (it == colours->end())
                throw Error("ColourOutOfRange", n.colour + " is not a colour of " + n.var);
            return digits_equal(n.var, bits_for(colours->size()),
                                static_cast<std::size_t>(it - colours->begin()), n.var2);
        }
        case Op::ExistsMon:
        case Op::ForAllMon: {
            scope.emplace_back(n.var, n.colours);
            Formula body = run(n.args[0]);
            scope.pop_back();
            if (n.colours.size() == 2) {
                return n.op == Op::ExistsMon ? Formula::exists_mon(n.var, n.colours, body)
                                             : Formula::forall_mon(n.var, n.colours, body);
            }
            const unsigned bits = bits_for(n.colours.size());
            // digit tuples must denote an actual colour
            Formula valid = Formula::top();
            if ((std::size_t{1} << bits) != n.colours.size()) {
                const std::string x = fresh.next();
                std::vector<Formula> options;
                for (std::size_t j = 0; j < n.colours.size(); ++j)
                    options.push_back(digits_equal(n.var, bits, j, x));
                valid = Formula::forall(x, Formula::lor(std::move(options)));
            }
            Formula out = n.op == Op::ExistsMon ? Formula::land(valid, body)
                                                : Formula::implies(valid, body);
            for (unsigned i = bits; i-- > 0;) {
                out = n.op == Op::ExistsMon
                          ? Formula::exists_mon(digit_var(n.var, i), {"0", "1"}, out)
                          : Formula::forall_mon(digit_var(n.var, i), {"0", "1"}, out);
            }
            return out;
        }
        default: break;
        }
        if (n.args.empty()) return f;
        Node copy = n;
        for (auto& a : copy.args) a = run(a);
        return rebuild(copy);
    }

    static Formula rebuild(const Node& n) {
        switch (n.op) {
        case Op::ExistsFO: return Formula::exists(n.var, n.args[0]);
        case Op::ForAllFO: return Formula::forall(n.var, n.args[0]);
        case Op::Not: return Formula::lnot(n.args[0]);
        case Op::Or: return Formula::lor(n.args);
        case Op::And: return Formula::land(n.args);
        case Op::Implies: return Formula::implies(n.args[0], n.args[1]);
        case Op::Iff: return Formula::iff(n.args[0], n.args[1]);
        default: throw Error("InvalidFormula", "unexpected node");
        }
    }
};

} // namespace

Formula desugar(const Formula& f) {
    Fresh fresh;
    return desugar_rec(f, fresh);
}

unsigned quantifier_rank(const Formula& f) { return rank_core(desugar(f)); }

Formula encode_monadic_to_binary(const Formula& f) {
    BinaryEncoder enc;
    for (const auto& X : free_variables(f).mon) enc.scope.emplace_back(X, std::vector<std::string>{"0", "1"});
    return enc.run(f);
}

Formula encode_monadic_to_binary(const Formula& f, const Env& env) {
    BinaryEncoder enc;
    for (const auto& X : free_variables(f).mon) {
        const auto it = env.mon.find(X);
        if (it == env.mon.end()) throw Error("UnboundVariable", "monadic variable " + X);
        enc.scope.emplace_back(X, it->second.colours);
    }
    return enc.run(f);
}

Env encode_env_binary(const Env& env) {
    Env out;
    out.fo = env.fo;
    for (const auto& [X, v] : env.mon) {
        if (v.colours.size() == 2) {
            out.mon[X] = v;
            continue;
        }
        const unsigned bits = bits_for(v.colours.size());
        for (unsigned i = 0; i < bits; ++i) {
            MonadicValue digit{{"0", "1"}, Colouring(v.values.size())};
            for (std::size_t p = 0; p < v.values.size(); ++p)
                digit.values[p] = (v.values[p] >> (bits - 1 - i)) & 1U;
            out.mon[digit_var(X, i)] = std::move(digit);
        }
    }
    return out;
}

namespace {

Formula inner_position(const std::string& x) {
    return Formula::land(Formula::lnot(Formula::first(x)), Formula::lnot(Formula::last(x)));
}

Formula relativize_rec(const Formula& f, Fresh& fresh) {
    const Node& n = f.node();
    switch (n.op) {
    case Op::MonEq:
    case Op::Less:
    case Op::Letter:
    case Op::Equal:
    case Op::True:
    case Op::False: return f;
    case Op::Succ:
    case Op::First:
    case Op::Last: return relativize_rec(desugar_rec(f, fresh), fresh);
    case Op::ExistsFO:
        return Formula::exists(n.var, Formula::land(inner_position(n.var), relativize_rec(n.args[0], fresh)));
    case Op::ForAllFO:
        return Formula::forall(n.var, Formula::implies(inner_position(n.var), relativize_rec(n.args[0], fresh)));
    case Op::ExistsMon: return Formula::exists_mon(n.var, n.colours, relativize_rec(n.args[0], fresh));
    case Op::ForAllMon: return Formula::forall_mon(n.var, n.colours, relativize_rec(n.args[0], fresh));
    default: {
        Node copy = n;
        for (auto& a : copy.args) a = relativize_rec(a, fresh);
        return BinaryEncoder::rebuild(copy);
    }
    }
}

} // namespace

Formula relativize_to_markers(
    const Formula& f,
    const std::map<std::string, std::pair<std::string, std::string>>& marker_colours) {
    for (const auto& X : free_variables(f).mon)
        if (!marker_colours.count(X)) throw Error("MissingMarkerColour", "no marker colours for " + X);
    Fresh fresh;
    fresh.counter = 1000;
    return relativize_rec(f, fresh);
}

Env extend_env_to_markers(
    const Env& env,
    const std::map<std::string, std::pair<std::string, std::string>>& marker_colours) {
    Env out;
    for (const auto& [x, p] : env.fo) out.fo[x] = p + 1;
    for (const auto& [X, v] : env.mon) {
        const auto it = marker_colours.find(X);
        if (it == marker_colours.end()) throw Error("MissingMarkerColour", "no marker colours for " + X);
        auto index = [&](const std::string& c) {
            const auto pos = std::find(v.colours.begin(), v.colours.end(), c);
            if (pos == v.colours.end()) throw Error("ColourOutOfRange", c + " is not a colour of " + X);
            return static_cast<Colour>(pos - v.colours.begin());
        };
        MonadicValue ext{v.colours, {}};
        ext.values.push_back(index(it->second.first));
        ext.values.insert(ext.values.end(), v.values.begin(), v.values.end());
        ext.values.push_back(index(it->second.second));
        out.mon[X] = std::move(ext);
    }
    return out;
}

} // namespace expreg::mso
