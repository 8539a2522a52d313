#include "expreg/ariadne.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "expreg/error.hpp"

namespace expreg {

AriadneAction AriadneAction::push(Move dir, int q) {
    switch (dir) {
    case Move::Left: return {Kind::PushLeft, q, -1};
    case Move::Stay: return {Kind::PushStay, q, -1};
    case Move::Right: return {Kind::PushRight, q, -1};
    }
    return {};
}

int AriadneTransducer::state_id(std::string_view n) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == n) return static_cast<int>(i);
    throw Error("UnknownName", "no state " + std::string(n));
}

void AriadneTransducer::set_order(const std::vector<std::pair<int, int>>& edges) {
    const std::size_t n = states.size();
    order.assign(n, std::vector<bool>(n, false));
    for (auto [p, q] : edges) {
        if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(q) >= n)
            throw Error("NotWellFormed", "order edge outside the state set");
        order[p][q] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (order[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (order[k][j]) order[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (order[i][i]) throw Error("NotWellFormed", "state order has a cycle through " + states[i]);
}

void AriadneTransducer::validate() const {
    const std::size_t n = states.size();
    if (n == 0 || initial < 0 || static_cast<std::size_t>(initial) >= n)
        throw Error("NotWellFormed", "bad initial state");
    if (order.size() != n) throw Error("NotWellFormed", "order matrix size");
    if (!accepting.empty() && accepting.size() != n) throw Error("NotWellFormed", "accepting set size");
    for (std::size_t u = 0; u < updates.size(); ++u) {
        if (updates[u].size() != n) throw Error("NotWellFormed", "update " + std::to_string(u) + " size");
        for (std::size_t q = 0; q < n; ++q) {
            const int v = updates[u][q];
            if (v < 0) continue;
            if (static_cast<std::size_t>(v) >= n || !order[q][v])
                throw Error("NonInflationaryUpdate",
                            "update " + std::to_string(u) + " maps " + states[q] + " to a non-larger state");
        }
    }
}

AriadneDelta table_delta(AriadneTable table) {
    auto shared = std::make_shared<const AriadneTable>(std::move(table));
    return [shared](Symbol letter, std::span<const int> view) -> std::optional<AriadneStep> {
        const auto it = shared->find({letter, std::vector<int>(view.begin(), view.end())});
        if (it == shared->end()) return std::nullopt;
        return it->second;
    };
}

std::vector<int> local_view(const Stack& s, std::size_t i) {
    std::vector<int> view;
    for (const auto& e : s)
        if (e.pos == i) view.push_back(e.state);
    return view;
}

bool stack_less(const AriadneTransducer& a, const Stack& s, const Stack& t) {
    const std::size_t n = std::min(s.size(), t.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i].state == t[i].state) continue;
        return a.less(s[i].state, t[i].state);
    }
    return s.size() < t.size();
}

std::optional<Successor> successor_stack(const AriadneTransducer& a, const Word& marked, const Stack& s) {
    if (s.empty()) return std::nullopt;
    const StackEntry top = s.back();
    const std::vector<int> view = local_view(s, top.pos);
    if (view.size() > a.bound) return std::nullopt;
    std::optional<AriadneStep> step = a.delta(marked[top.pos], view);
    if (!step) return std::nullopt;
    if (step->production.size() > a.max_production)
        throw Error("NotWellFormed", "production longer than the declared maximum");
    Successor next{s, std::move(step->production)};
    const AriadneAction& act = step->action;
    switch (act.kind) {
    case AriadneAction::Kind::PushRight:
        if (top.pos + 1 >= marked.size()) return std::nullopt;
        next.stack.push_back({act.state, top.pos + 1});
        break;
    case AriadneAction::Kind::PushLeft:
        if (top.pos == 0) return std::nullopt;
        next.stack.push_back({act.state, top.pos - 1});
        break;
    case AriadneAction::Kind::PushStay: next.stack.push_back({act.state, top.pos}); break;
    case AriadneAction::Kind::Pop: {
        if (s.size() < 2) return std::nullopt;
        if (act.update < 0 || static_cast<std::size_t>(act.update) >= a.updates.size())
            throw Error("NotWellFormed", "pop with unknown update");
        next.stack.pop_back();
        const int v = a.updates[act.update][next.stack.back().state];
        if (v < 0) return std::nullopt;
        next.stack.back().state = v;
        break;
    }
    }
    if (act.kind != AriadneAction::Kind::Pop &&
        (act.state < 0 || static_cast<std::size_t>(act.state) >= a.num_states()))
        throw Error("NotWellFormed", "push of unknown state");
    if (!stack_less(a, s, next.stack)) throw Error("NonInflationaryUpdate", "successor stack is not larger");
    return next;
}

std::uint64_t safety_cap(const AriadneTransducer& a, std::size_t word_length) {
    const double exponent = static_cast<double>((word_length + 2) * a.bound);
    const double v = std::pow(static_cast<double>(a.num_states()), exponent);
    if (v >= 1.8e19) return UINT64_MAX;
    return static_cast<std::uint64_t>(v) + 1;
}

AriadneRun run_ariadne(const AriadneTransducer& a, const Word& w, RunOptions opts, const Caps& caps) {
    for (Symbol s : w)
        if (!a.input.contains(s)) throw Error("InvalidWord", s.name() + " is not an input letter");
    const Word marked = MarkedWord(w).letters();
    const std::uint64_t cap = safety_cap(a, w.size());
    AriadneRun run;
    Stack s = {{a.initial, 0}};
    run.length = 1;
    run.accepted = a.is_accepting(a.initial);
    if (opts.record) run.stacks.push_back(s);
    while (!(opts.stop_on_accept && run.accepted)) {
        auto next = successor_stack(a, marked, s);
        if (!next) break;
        if (++run.length > cap) throw Error("SafetyCapExceeded", "run longer than " + std::to_string(cap));
        if (run.length > caps.max_steps)
            throw Error("CapExceeded", "run longer than " + std::to_string(caps.max_steps) + " steps");
        run.output.insert(run.output.end(), next->production.begin(), next->production.end());
        if (opts.record) run.productions.push_back(next->production);
        s = std::move(next->stack);
        if (a.is_accepting(s.back().state)) run.accepted = true;
        if (opts.record) run.stacks.push_back(s);
    }
    return run;
}

Word evaluate_ariadne(const AriadneTransducer& a, const Word& w, const Caps& caps) {
    return run_ariadne(a, w, {false, false}, caps).output;
}

bool accepts(const AriadneTransducer& a, const Word& w, const Caps& caps) {
    return run_ariadne(a, w, {false, true}, caps).accepted;
}

bool Dfa::accepts(const Word& w, const std::vector<unsigned>& masks) const {
    int q = initial;
    for (std::size_t i = 0; i < w.size(); ++i) q = step(q, w[i], masks[i]);
    return accepting[q];
}

// ---------------------------------------------------------------------------
// Subset enumerator: R = bits zigzag rows used as one binary counter over all
// letter positions, then a left-to-right simulation sweep of the automaton.

AriadneTransducer build_subset_enumerator(const Dfa& d) {
    const int R = static_cast<int>(d.bits);
    AriadneTransducer a;
    a.name = "subset_enumerator";
    a.input = d.input;
    a.output = d.input;
    a.states = {"Z", "O", "C", "RET", "DONE", "ACC"};
    const int Z = 0, O = 1, C = 2, RET = 3, DONE = 4, ACC = 5;
    auto S = [](int q) { return 6 + q; };
    for (int q = 0; q < d.states; ++q) a.states.push_back("S" + std::to_string(q));
    std::vector<std::pair<int, int>> edges = {{Z, O}, {O, C}, {RET, DONE}};
    for (int q = 0; q < d.states; ++q) edges.emplace_back(S(q), DONE);
    a.set_order(edges);
    a.bound = static_cast<unsigned>(R + 3);
    a.accepting.assign(a.states.size(), false);
    a.accepting[ACC] = true;
    Update g(a.states.size(), -1), u(a.states.size(), -1);
    g[Z] = O;
    g[O] = C;
    u[RET] = DONE;
    u[Z] = O;
    for (int q = 0; q < d.states; ++q) u[S(q)] = DONE;
    a.updates = {g, u};
    const int G = 0, U = 1;
    a.initial = R == 0 ? S(d.initial) : Z;

    a.delta = [=](Symbol letter, std::span<const int> view) -> std::optional<AriadneStep> {
        using Act = AriadneAction;
        const int top = view.back();
        const int L = static_cast<int>(view.size());
        const bool at_begin = letter == begin_marker();
        const bool at_end = letter == end_marker();
        const bool marker = at_begin || at_end;
        auto step = [](Act act) { return AriadneStep{{}, act}; };
        const Move row_dir = L % 2 == 1 ? Move::Right : Move::Left;
        const bool row_end = L % 2 == 1 ? at_end : at_begin;
        if (top == Z && L <= R) {
            if (!row_end) return step(Act::push(row_dir, Z));
            if (L < R) return step(Act::push(Move::Stay, Z));
            return step(Act::push(Move::Stay, at_begin ? S(d.initial) : RET));
        }
        if (top == O) {
            if (marker) return step(Act::pop(G));
            return step(Act::push(row_dir, Z));
        }
        if (top == C) return step(Act::pop(G));
        if (top == RET) {
            if (at_begin) return step(Act::push(Move::Stay, S(d.initial)));
            return step(Act::push(Move::Left, RET));
        }
        if (top == DONE) return step(Act::pop(U));
        if (top >= S(0)) {
            const int q = top - S(0);
            if (at_begin) return step(Act::push(Move::Right, top));
            if (at_end) {
                if (d.accepting[q]) return step(Act::push(Move::Stay, ACC));
                return step(Act::pop(U));
            }
            unsigned mask = 0;
            for (int r = 0; r < R; ++r)
                if (view[r] == O) mask |= 1U << r;
            return step(Act::push(Move::Right, S(d.step(q, letter, mask))));
        }
        return std::nullopt;
    };
    return a;
}

// ---------------------------------------------------------------------------
// Binary-counter subwords transducer: row 1 holds the counter (most
// significant bit at position 1), row 2 sweeps back to ⊳ and prints the
// selected letters while popping.

namespace {

AriadneTransducer subwords_transducer() {
    AriadneTransducer a;
    a.name = "subwords";
    a.input = Alphabet::of("abc");
    a.output = a.input;
    a.states = {"0", "1", "2"};
    a.set_order({{0, 1}, {1, 2}});
    a.initial = 0;
    a.bound = 2;
    a.updates = {{1, 2, -1}};
    a.delta = [](Symbol letter, std::span<const int> view) -> std::optional<AriadneStep> {
        using Act = AriadneAction;
        const bool at_begin = letter == begin_marker();
        const bool at_end = letter == end_marker();
        const std::vector<int> v(view.begin(), view.end());
        if (v == std::vector<int>{0}) {
            if (at_end) return AriadneStep{{}, Act::push(Move::Left, 0)};
            return AriadneStep{{}, Act::push(Move::Right, 0)};
        }
        if (at_begin) {
            if (v == std::vector<int>{0, 0}) return AriadneStep{{}, Act::pop(0)};
            return std::nullopt;
        }
        if (at_end) {
            if (v == std::vector<int>{1}) return AriadneStep{{}, Act::pop(0)};
            return std::nullopt;
        }
        if (v.size() == 2 && v[1] == 0) return AriadneStep{{}, Act::push(Move::Left, 0)};
        if (v.size() == 2 && v[1] == 1) {
            Word out;
            if (v[0] == 1) out.push_back(letter);
            return AriadneStep{out, Act::pop(0)};
        }
        if (v == std::vector<int>{1}) return AriadneStep{{}, Act::push(Move::Right, 0)};
        if (v == std::vector<int>{2}) return AriadneStep{{}, Act::pop(0)};
        return std::nullopt;
    };
    return a;
}

} // namespace

std::vector<std::string> builtin_ariadne_names() { return {"subwords", "subwords_acceptor"}; }

AriadneTransducer builtin_ariadne(std::string_view name) {
    if (name == "subwords") return subwords_transducer();
    if (name == "subwords_acceptor") {
        AriadneTransducer a = subwords_transducer();
        a.name = "subwords_acceptor";
        a.accepting = {false, false, true};
        return a;
    }
    throw Error("UnknownName", "no built-in Ariadne transducer " + std::string(name));
}

} // namespace expreg
