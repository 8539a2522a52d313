#include "expreg/althennie.hpp"

#include <tuple>

#include "expreg/error.hpp"
#include "expreg/yhennie.hpp"

namespace expreg {

std::string to_string(const PosBool& f) {
    switch (f.kind) {
    case PosBool::Kind::True: return "true";
    case PosBool::Kind::False: return "false";
    case PosBool::Kind::Atom:
        return "(" + f.atom.state.name() + "," + f.atom.write.name() + "," + std::string(move_name(f.atom.move)) + ")";
    case PosBool::Kind::And:
    case PosBool::Kind::Or: {
        std::string out = "(";
        for (std::size_t i = 0; i < f.args.size(); ++i)
            out += (i ? (f.kind == PosBool::Kind::And ? " ∧ " : " ∨ ") : "") + to_string(f.args[i]);
        return out + ")";
    }
    }
    return "?";
}

PosBool AlternatingHennieAutomaton::transition(Symbol q, Symbol read) const {
    if (delta) return delta(q, read);
    const auto it = table.find({q, read});
    return it == table.end() ? PosBool::bottom() : it->second;
}

namespace {

struct Evaluator {
    const AlternatingHennieAutomaton& h;
    AhOptions opts;
    const Caps& caps;
    std::vector<unsigned> visits;
    std::map<std::tuple<const void*, std::size_t, std::vector<const void*>>, bool> memo;
    std::uint64_t expanded = 0;

    bool accepts_from(Symbol q, const PointedTape& tape) {
        std::tuple<const void*, std::size_t, std::vector<const void*>> key;
        if (!opts.full_expansion) {
            std::vector<const void*> cells;
            cells.reserve(tape.cells.size());
            for (Symbol s : tape.cells) cells.push_back(s.id());
            key = {q.id(), tape.pointer, std::move(cells)};
            if (const auto it = memo.find(key); it != memo.end()) return it->second;
        }
        if (++expanded > caps.max_nodes)
            throw Error("CapExceeded", "alternating run exceeds " + std::to_string(caps.max_nodes) + " nodes");
        if (++visits[tape.pointer] > h.visit_bound)
            throw Error("VisitBoundExceeded", "position " + std::to_string(tape.pointer) + " in state " + q.name());
        const bool result = eval(h.transition(q, tape.read()), tape);
        --visits[tape.pointer];
        if (!opts.full_expansion) memo.emplace(std::move(key), result);
        return result;
    }

    bool eval(const PosBool& f, const PointedTape& tape) {
        switch (f.kind) {
        case PosBool::Kind::True: return true;
        case PosBool::Kind::False: return false;
        case PosBool::Kind::Atom: {
            const long next = static_cast<long>(tape.pointer) + offset(f.atom.move);
            if (next < 0 || next >= static_cast<long>(tape.cells.size())) return false;
            PointedTape child = tape;
            child.cells[child.pointer] = f.atom.write;
            child.pointer = static_cast<std::size_t>(next);
            return accepts_from(f.atom.state, child);
        }
        case PosBool::Kind::And: {
            bool all = true;
            for (const auto& a : f.args) {
                if (!eval(a, tape)) {
                    all = false;
                    if (!opts.full_expansion) break;
                }
            }
            return all;
        }
        case PosBool::Kind::Or: {
            bool any = false;
            for (const auto& a : f.args) {
                if (eval(a, tape)) {
                    any = true;
                    if (!opts.full_expansion) break;
                }
            }
            return any;
        }
        }
        return false;
    }
};

} // namespace

bool ah_accepts_from(const AlternatingHennieAutomaton& h, Symbol q, const PointedTape& tape, AhOptions opts,
                     const Caps& caps) {
    Evaluator ev{h, opts, caps, std::vector<unsigned>(tape.cells.size(), 0), {}, 0};
    return ev.accepts_from(q, tape);
}

bool ah_accepts(const AlternatingHennieAutomaton& h, const Word& w, AhOptions opts, const Caps& caps) {
    for (Symbol s : w)
        if (!h.input.contains(s)) throw Error("InvalidWord", s.name() + " is not an input letter");
    PointedTape tape = PointedTape::initial(MarkedWord(w));
    if (h.decorate)
        for (auto& c : tape.cells) c = h.decorate(c);
    return ah_accepts_from(h, h.initial, tape, opts, caps);
}

namespace {

template <class Pred>
std::vector<Word> collect(const Alphabet& sigma, std::size_t max_len, const Caps& caps, Pred accepted) {
    std::uint64_t total = 1, layer = 1;
    for (std::size_t i = 0; i < max_len; ++i) {
        layer *= sigma.size();
        total += layer;
        if (total > caps.max_words)
            throw Error("CapExceeded", "more than " + std::to_string(caps.max_words) + " words");
    }
    std::vector<Word> out;
    for (auto& w : words_upto(sigma, max_len))
        if (accepted(w)) out.push_back(std::move(w));
    return out;
}

} // namespace

std::vector<Word> language_upto(const AriadneTransducer& a, std::size_t max_len, const Caps& caps) {
    return collect(a.input, max_len, caps, [&](const Word& w) { return accepts(a, w, caps); });
}

std::vector<Word> language_upto(const AlternatingHennieAutomaton& h, std::size_t max_len, const Caps& caps) {
    return collect(h.input, max_len, caps, [&](const Word& w) { return ah_accepts(h, w, {}, caps); });
}

} // namespace expreg
