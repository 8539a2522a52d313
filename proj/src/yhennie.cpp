#include "expreg/yhennie.hpp"

#include <algorithm>
#include <functional>

#include "expreg/error.hpp"

namespace expreg {

const std::vector<YhItem>& YieldHennieMachine::transition(Symbol q, Symbol read) const {
    static const std::vector<YhItem> empty;
    const auto it = delta.find({q, read});
    return it == delta.end() ? empty : it->second;
}

namespace {

void check_marker_spawn(const Spawn& s, Symbol read) {
    const bool at_begin = read == begin_marker();
    const bool at_end = read == end_marker();
    if (!at_begin && !at_end) {
        if (is_marker(s.write)) throw Error("MarkerViolation", "writes " + s.write.name() + " over " + read.name());
        return;
    }
    if (s.write != read) throw Error("MarkerViolation", "overwrites " + read.name() + " with " + s.write.name());
    if (at_begin && s.move == Move::Left) throw Error("MarkerViolation", "moves left from ⊳");
    if (at_end && s.move == Move::Right) throw Error("MarkerViolation", "moves right from ⊲");
}

struct Builder {
    const YieldHennieMachine& m;
    const Caps& caps;
    RunTree tree;
    std::vector<unsigned> visits;
    std::vector<std::size_t> branch;

    std::size_t add(RunNode n) {
        if (tree.nodes.size() >= caps.max_nodes)
            throw Error("CapExceeded", "run tree exceeds " + std::to_string(caps.max_nodes) + " nodes");
        tree.nodes.push_back(std::move(n));
        return tree.nodes.size() - 1;
    }

    std::string witness() const {
        std::string out;
        for (auto i : branch) {
            const RunNode& n = tree.nodes[i];
            out += "(" + n.state.name() + "," + std::to_string(n.tape.pointer) + ")";
        }
        return out;
    }

    std::size_t build(Symbol q, PointedTape tape) {
        const std::size_t pos = tape.pointer;
        const std::size_t id = add({RunNode::Kind::Internal, q, std::move(tape), {}, {}});
        branch.push_back(id);
        if (++visits[pos] > m.visit_bound)
            throw Error("VisitBoundExceeded", "position " + std::to_string(pos) + " on branch " + witness());
        const Symbol read = tree.nodes[id].tape.read();
        const auto& items = m.transition(q, read);
        std::vector<std::size_t> kids;
        for (const auto& item : items) {
            if (const Symbol* g = std::get_if<Symbol>(&item)) {
                kids.push_back(add({RunNode::Kind::Letter, {}, {}, *g, {}}));
                continue;
            }
            const Spawn& s = std::get<Spawn>(item);
            check_marker_spawn(s, read);
            PointedTape next = apply_move(tree.nodes[id].tape, s.write, s.move);
            kids.push_back(build(s.state, std::move(next)));
        }
        if (kids.empty()) kids.push_back(add({RunNode::Kind::Empty, {}, {}, {}, {}}));
        tree.nodes[id].children = std::move(kids);
        --visits[pos];
        branch.pop_back();
        return id;
    }
};

} // namespace

RunTree run_tree(const YieldHennieMachine& m, const Word& w, const Caps& caps) {
    for (Symbol s : w)
        if (!m.input.contains(s)) throw Error("InvalidWord", s.name() + " is not an input letter");
    Builder b{m, caps, {}, std::vector<unsigned>(w.size() + 2, 0), {}};
    b.build(m.initial, PointedTape::initial(MarkedWord(w)));
    return std::move(b.tree);
}

Word yield_of(const RunTree& t) {
    Word out;
    if (t.nodes.empty()) return out;
    std::vector<std::size_t> todo = {0};
    while (!todo.empty()) {
        const RunNode& n = t.nodes[todo.back()];
        todo.pop_back();
        if (n.kind == RunNode::Kind::Letter) out.push_back(n.letter);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) todo.push_back(*it);
    }
    return out;
}

Word evaluate_yh(const YieldHennieMachine& m, const Word& w, const Caps& caps) {
    return yield_of(run_tree(m, w, caps));
}

std::string verify_run_tree(const YieldHennieMachine& m, const Word& w, const RunTree& t) {
    if (t.nodes.empty()) return "empty tree";
    const RunNode& root = t.nodes[0];
    if (root.kind != RunNode::Kind::Internal || root.state != m.initial ||
        root.tape != PointedTape::initial(MarkedWord(w)))
        return "root is not the initial configuration";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const RunNode& n = t.nodes[i];
        if (n.kind != RunNode::Kind::Internal) {
            if (!n.children.empty()) return "leaf " + std::to_string(i) + " has children";
            continue;
        }
        const auto& items = m.transition(n.state, n.tape.read());
        if (items.empty()) {
            if (n.children.size() != 1 || t.nodes[n.children[0]].kind != RunNode::Kind::Empty)
                return "node " + std::to_string(i) + " should be a single ε-leaf parent";
            continue;
        }
        if (items.size() != n.children.size()) return "node " + std::to_string(i) + " has the wrong arity";
        for (std::size_t j = 0; j < items.size(); ++j) {
            const RunNode& c = t.nodes[n.children[j]];
            if (const Symbol* g = std::get_if<Symbol>(&items[j])) {
                if (c.kind != RunNode::Kind::Letter || c.letter != *g)
                    return "node " + std::to_string(i) + " child " + std::to_string(j) + " is not " + g->name();
                continue;
            }
            const Spawn& s = std::get<Spawn>(items[j]);
            PointedTape expected = n.tape;
            expected.cells[expected.pointer] = s.write;
            expected.pointer = static_cast<std::size_t>(static_cast<long>(expected.pointer) + offset(s.move));
            if (c.kind != RunNode::Kind::Internal || c.state != s.state || c.tape != expected)
                return "node " + std::to_string(i) + " child " + std::to_string(j) + " does not match δ";
        }
    }
    return "";
}

unsigned max_visits(const RunTree& t) {
    if (t.nodes.empty()) return 0;
    std::size_t cells = t.nodes[0].tape.cells.size();
    std::vector<unsigned> visits(cells, 0);
    unsigned best = 0;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        const RunNode& n = t.nodes[i];
        if (n.kind != RunNode::Kind::Internal) return;
        best = std::max(best, ++visits[n.tape.pointer]);
        for (auto c : n.children) walk(c);
        --visits[n.tape.pointer];
    };
    walk(0);
    return best;
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

Symbol sym(const std::string& s) { return Symbol(s); }

std::vector<Symbol> marked_tape(const Alphabet& sigma) {
    std::vector<Symbol> tape = sigma.symbols();
    tape.push_back(begin_marker());
    tape.push_back(end_marker());
    return tape;
}

YieldHennieMachine rev_prefix() {
    YieldHennieMachine m;
    m.name = "rev_prefix";
    m.input = Alphabet::of("abc");
    m.output = m.input;
    const Symbol q0 = sym("q0"), q1 = sym("q1");
    m.states = {q0, q1};
    m.initial = q0;
    m.tape = marked_tape(m.input);
    m.visit_bound = 3;
    m.delta[{q0, begin_marker()}] = {Spawn{q0, begin_marker(), Move::Right}};
    m.delta[{q0, end_marker()}] = {};
    m.delta[{q1, begin_marker()}] = {};
    for (Symbol a : m.input.symbols()) {
        m.delta[{q0, a}] = {Spawn{q1, a, Move::Left}, Spawn{q0, a, Move::Right}};
        m.delta[{q1, a}] = {a, Spawn{q1, a, Move::Left}};
    }
    return m;
}

YieldHennieMachine subwords() {
    YieldHennieMachine m;
    m.name = "subwords";
    m.input = Alphabet::of("abc");
    m.output = m.input;
    const Symbol s0 = sym("s0"), s1 = sym("s1"), back = sym("back");
    m.states = {s0, s1, back};
    m.initial = s0;
    m.tape = marked_tape(m.input);
    m.visit_bound = 2;
    m.delta[{s0, begin_marker()}] = {Spawn{s0, begin_marker(), Move::Right}};
    m.delta[{s1, end_marker()}] = {Spawn{back, end_marker(), Move::Left}};
    for (Symbol a : m.input.symbols()) {
        const Symbol g = sym(a.name() + "_g"), r = sym(a.name() + "_r"), b = sym(a.name() + "_b");
        m.tape.insert(m.tape.end(), {g, r, b});
        m.delta[{s0, a}] = {Spawn{s0, g, Move::Right}, Spawn{s1, r, Move::Right}, Spawn{s0, b, Move::Right}};
        m.delta[{s1, a}] = {Spawn{s1, g, Move::Right}, Spawn{s1, b, Move::Right}};
        m.delta[{back, g}] = {Spawn{back, g, Move::Left}};
        m.delta[{back, b}] = {Spawn{back, b, Move::Left}};
        m.delta[{back, r}] = {a};
    }
    return m;
}

YieldHennieMachine distribute() {
    YieldHennieMachine m;
    m.name = "distribute";
    m.input = Alphabet::of("abcdef#");
    m.output = m.input;
    const Symbol hash("#");
    auto scan = [](int sel, int start, int min) {
        return sym("scan(" + std::to_string(sel) + "," + std::to_string(start) + "," + std::to_string(min) + ")");
    };
    auto back = [](int min) { return sym("back(" + std::to_string(min) + ")"); };
    const Symbol print = sym("print");
    for (int sel = 0; sel < 2; ++sel)
        for (int start = 0; start < 2; ++start)
            for (int min = 0; min < 2; ++min) m.states.push_back(scan(sel, start, min));
    m.states.insert(m.states.end(), {back(0), back(1), print});
    m.initial = scan(0, 1, 1);
    m.tape = marked_tape(m.input);
    m.visit_bound = 3;

    std::vector<Symbol> letters;
    for (Symbol a : m.input.symbols())
        if (a != hash) letters.push_back(a);
    for (Symbol a : letters) m.tape.insert(m.tape.end(), {sym(a.name() + "_S"), sym(a.name() + "_g")});

    m.delta[{m.initial, begin_marker()}] = {Spawn{m.initial, begin_marker(), Move::Right}};
    for (int sel = 0; sel < 2; ++sel) {
        for (int start = 0; start < 2; ++start) {
            for (int min = 0; min < 2; ++min) {
                const Symbol q = scan(sel, start, min);
                for (Symbol a : letters) {
                    const Symbol sa = sym(a.name() + "_S"), ga = sym(a.name() + "_g");
                    if (sel == 0)
                        m.delta[{q, a}] = {Spawn{scan(1, 0, min & start), sa, Move::Right},
                                           Spawn{scan(0, 0, min), ga, Move::Right}};
                    else
                        m.delta[{q, a}] = {Spawn{scan(1, 0, min), ga, Move::Right}};
                }
                if (sel == 1) {
                    m.delta[{q, hash}] = {Spawn{scan(0, 1, min), hash, Move::Right}};
                    m.delta[{q, end_marker()}] = {Spawn{back(min), end_marker(), Move::Left}};
                }
            }
        }
    }
    for (int min = 0; min < 2; ++min) {
        for (Symbol t : m.tape)
            if (!is_marker(t)) m.delta[{back(min), t}] = {Spawn{back(min), t, Move::Left}};
        if (min == 0)
            m.delta[{back(min), begin_marker()}] = {hash, Spawn{print, begin_marker(), Move::Right}};
        else
            m.delta[{back(min), begin_marker()}] = {Spawn{print, begin_marker(), Move::Right}};
    }
    for (Symbol t : m.tape) {
        if (is_marker(t)) continue;
        const std::string& n = t.name();
        if (n.size() > 2 && n.substr(n.size() - 2) == "_S")
            m.delta[{print, t}] = {sym(n.substr(0, n.size() - 2)), Spawn{print, t, Move::Right}};
        else
            m.delta[{print, t}] = {Spawn{print, t, Move::Right}};
    }
    return m;
}

} // namespace

std::vector<std::string> builtin_yh_names() { return {"rev_prefix", "subwords", "distribute"}; }

YieldHennieMachine builtin_yh(std::string_view name) {
    if (name == "rev_prefix") return rev_prefix();
    if (name == "subwords") return subwords();
    if (name == "distribute") return distribute();
    throw Error("UnknownName", "no built-in yield-Hennie machine " + std::string(name));
}

} // namespace expreg
