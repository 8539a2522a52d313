#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "expreg/error.hpp"
#include "expreg/xlate.hpp"

namespace expreg {

namespace {

std::string view_name(const std::vector<int>& view) {
    std::string out;
    for (std::size_t i = 0; i < view.size(); ++i) out += (i ? "." : "") + std::to_string(view[i]);
    return out;
}

struct TapeRegistry {
    std::mutex mu;
    std::map<const void*, AhTapeLetter> decode;
};

TapeRegistry& registry() {
    static TapeRegistry r;
    return r;
}

} // namespace

Symbol ah_tape_symbol(Symbol letter, const std::vector<int>& view) {
    const Symbol s(letter.name() + "|" + view_name(view));
    TapeRegistry& r = registry();
    std::lock_guard lock(r.mu);
    r.decode.emplace(s.id(), AhTapeLetter{letter, view});
    return s;
}

AhTapeLetter ah_decode_tape(Symbol s) {
    TapeRegistry& r = registry();
    std::lock_guard lock(r.mu);
    const auto it = r.decode.find(s.id());
    if (it == r.decode.end()) throw Error("NotWellFormed", "unknown tape letter " + s.name());
    return it->second;
}

std::vector<Update> ah_candidate_updates(const AriadneTransducer& a) {
    std::vector<Update> out;
    for (const auto& u : a.updates)
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    // f₀: first partial map, in counting order from the everywhere-undefined
    // one, that is not declared
    const std::size_t n = a.num_states();
    Update f(n, -1);
    while (std::find(out.begin(), out.end(), f) != out.end()) {
        std::size_t i = 0;
        while (i < n && ++f[i] == static_cast<int>(n)) f[i++] = -1;
    }
    out.push_back(f);
    return out;
}

Symbol ah_state_symbol(const AriadneTransducer& a, int q, int update) {
    return Symbol(a.states[q] + "/" + std::to_string(update));
}

namespace {

struct AhExpansion {
    AriadneTransducer a;
    std::vector<Update> cands;
    int f0 = 0;
    std::map<const void*, AhState> states;
    std::mutex mu;
    std::map<std::pair<const void*, const void*>, PosBool> cache;

    AhState decode_state(Symbol s) const {
        const auto it = states.find(s.id());
        if (it == states.end()) throw Error("NotWellFormed", "unknown state " + s.name());
        return it->second;
    }

    std::optional<AriadneStep> step(Symbol letter, std::vector<int> view) const {
        if (view.size() > a.bound) return std::nullopt;
        return a.delta(letter, view);
    }

    void chain(Symbol letter, const std::vector<int>& v, int qj, int f, std::vector<int>& seen,
               std::vector<PosBool>& atoms, std::vector<PosBool>& disjuncts) const {
        if (a.is_accepting(qj)) {
            disjuncts.push_back(PosBool::all(atoms));
            return;
        }
        std::vector<int> view = v;
        view.push_back(qj);
        const auto st = step(letter, view);
        if (!st) return;
        if (st->action.kind == AriadneAction::Kind::Pop) {
            if (a.updates[st->action.update] == cands[f]) disjuncts.push_back(PosBool::all(atoms));
            return;
        }
        Move dir = Move::Stay;
        if (st->action.kind == AriadneAction::Kind::PushLeft) dir = Move::Left;
        if (st->action.kind == AriadneAction::Kind::PushRight) dir = Move::Right;
        const Symbol write = ah_tape_symbol(letter, view);
        for (int g = 0; g < static_cast<int>(cands.size()); ++g) {
            atoms.push_back(PosBool::make_atom(ah_state_symbol(a, st->action.state, g), write, dir));
            if (g == f0) {
                disjuncts.push_back(PosBool::all(atoms));
            } else {
                const int next = cands[g][qj];
                if (next >= 0 && std::find(seen.begin(), seen.end(), next) == seen.end()) {
                    seen.push_back(next);
                    chain(letter, v, next, f, seen, atoms, disjuncts);
                    seen.pop_back();
                }
            }
            atoms.pop_back();
        }
    }

    PosBool delta(Symbol qs, Symbol read) {
        {
            std::lock_guard lock(mu);
            const auto it = cache.find({qs.id(), read.id()});
            if (it != cache.end()) return it->second;
        }
        const AhState st = decode_state(qs);
        const AhTapeLetter t = ah_decode_tape(read);
        std::vector<int> seen = {st.state};
        std::vector<PosBool> atoms, disjuncts;
        chain(t.letter, t.view, st.state, st.update, seen, atoms, disjuncts);
        PosBool out = PosBool::any(std::move(disjuncts));
        std::lock_guard lock(mu);
        cache.emplace(std::make_pair(qs.id(), read.id()), out);
        return out;
    }
};

} // namespace

AlternatingHennieAutomaton ariadne_to_althennie(const AriadneTransducer& a) {
    a.validate();
    auto ctx = std::make_shared<AhExpansion>();
    ctx->a = a;
    ctx->cands = ah_candidate_updates(a);
    ctx->f0 = static_cast<int>(ctx->cands.size()) - 1;

    AlternatingHennieAutomaton h;
    h.name = a.name + "_althennie";
    h.input = a.input;
    for (int q = 0; q < static_cast<int>(a.num_states()); ++q) {
        for (int f = 0; f < static_cast<int>(ctx->cands.size()); ++f) {
            const Symbol s = ah_state_symbol(a, q, f);
            ctx->states[s.id()] = {q, f};
            h.states.push_back(s);
        }
    }
    h.initial = ah_state_symbol(a, a.initial, ctx->f0);
    h.visit_bound = a.bound + 1;
    h.decorate = [](Symbol s) { return ah_tape_symbol(s, {}); };
    h.delta = [ctx](Symbol q, Symbol read) { return ctx->delta(q, read); };
    return h;
}

} // namespace expreg
