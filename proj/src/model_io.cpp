#include "expreg/model_io.hpp"

#include <fstream>
#include <map>

#include "expreg/error.hpp"

namespace expreg {

namespace {

using mso::Formula;
using mso::Op;

[[noreturn]] void schema(const std::string& what) { throw UsageError("model file: " + what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing \"") + key + "\"");
    return j.at(key);
}

std::string str(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) schema(std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

std::vector<std::string> strings(const Json& j) {
    if (!j.is_array()) schema("expected an array of strings");
    std::vector<std::string> out;
    for (const Json& x : j) {
        if (!x.is_string()) schema("expected an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

Json alphabet_json(const Alphabet& a) {
    Json out = Json::array();
    for (Symbol s : a.symbols()) out.push_back(s.name());
    return out;
}

Alphabet alphabet_from(const Json& j) {
    std::vector<Symbol> out;
    for (const auto& s : strings(j)) out.emplace_back(s);
    return Alphabet(std::move(out));
}

Json word_json(const Word& w) {
    Json out = Json::array();
    for (Symbol s : w) out.push_back(s.name());
    return out;
}

Word word_from(const Json& j) {
    Word out;
    for (const auto& s : strings(j)) out.emplace_back(s);
    return out;
}

Move move_from(const Json& j) {
    if (!j.is_string()) schema("move must be a string");
    const auto m = parse_move(j.get<std::string>());
    if (!m) schema("bad move " + j.get<std::string>());
    return *m;
}

// ---------------------------------------------------------------------------
// setinterp

Json provider_json(const PredicateProvider& p) {
    if (p.is_oracle()) throw Error("NotSerializable", "procedural predicate");
    return {{"vars", p.vars()}, {"formula", formula_to_json(p.as_formula())}};
}

PredicateProvider provider_from(const Json& j) {
    return PredicateProvider::formula(formula_from_json(field(j, "formula")), strings(field(j, "vars")));
}

Json interp_json(const SetInterpretation& phi) {
    if (phi.colours.empty()) throw Error("NotSerializable", phi.name + " has unnamed colours");
    Json j = {{"kind", "setinterp"},
              {"name", phi.name},
              {"colours", phi.colours},
              {"input", alphabet_json(phi.input)},
              {"output", alphabet_json(phi.output)},
              {"conf", provider_json(phi.conf)},
              {"less", provider_json(phi.less)}};
    Json letters = Json::array();
    for (const auto& [g, p] : phi.letters) {
        Json l = provider_json(p);
        l["letter"] = g.name();
        letters.push_back(std::move(l));
    }
    j["letters"] = std::move(letters);
    if (phi.marked) {
        j["marked"] = true;
        j["markerBegin"] = phi.marker_begin;
        j["markerEnd"] = phi.marker_end;
    }
    if (!phi.candidates_name.empty()) j["candidates"] = phi.candidates_name;
    return j;
}

SetInterpretation interp_from(const Json& j) {
    SetInterpretation phi;
    phi.name = j.value("name", "setinterp");
    phi.colours = strings(field(j, "colours"));
    phi.input = alphabet_from(field(j, "input"));
    phi.output = alphabet_from(field(j, "output"));
    phi.conf = provider_from(field(j, "conf"));
    phi.less = provider_from(field(j, "less"));
    for (const Json& l : field(j, "letters")) phi.letters.emplace_back(Symbol(str(l, "letter")), provider_from(l));
    phi.marked = j.value("marked", false);
    if (phi.marked) {
        phi.marker_begin = str(j, "markerBegin");
        phi.marker_end = str(j, "markerEnd");
    }
    if (j.contains("candidates")) {
        const std::string name = str(j, "candidates");
        const SetInterpretation src = builtin_interpretation(name);
        phi.candidates = phi.marked ? to_marked(src).candidates : src.candidates;
        phi.candidates_name = name;
    }
    phi.prepare();
    return phi;
}

// ---------------------------------------------------------------------------
// yhennie

Json yh_json(const YieldHennieMachine& m) {
    Json states = Json::array(), tape = Json::array(), delta = Json::array();
    for (Symbol q : m.states) states.push_back(q.name());
    for (Symbol t : m.tape) tape.push_back(t.name());
    for (const auto& [key, items] : m.delta) {
        Json out = Json::array();
        for (const auto& item : items) {
            if (const Symbol* g = std::get_if<Symbol>(&item)) {
                out.push_back({{"emit", g->name()}});
            } else {
                const Spawn& s = std::get<Spawn>(item);
                out.push_back({{"state", s.state.name()}, {"write", s.write.name()}, {"move", move_name(s.move)}});
            }
        }
        delta.push_back({{"state", key.first.name()}, {"read", key.second.name()}, {"out", std::move(out)}});
    }
    return {{"kind", "yhennie"},
            {"name", m.name},
            {"input", alphabet_json(m.input)},
            {"output", alphabet_json(m.output)},
            {"states", std::move(states)},
            {"initial", m.initial.name()},
            {"tape", std::move(tape)},
            {"visitBound", m.visit_bound},
            {"delta", std::move(delta)}};
}

YieldHennieMachine yh_from(const Json& j) {
    YieldHennieMachine m;
    m.name = j.value("name", "yhennie");
    m.input = alphabet_from(field(j, "input"));
    m.output = alphabet_from(field(j, "output"));
    for (const auto& s : strings(field(j, "states"))) m.states.emplace_back(s);
    m.initial = Symbol(str(j, "initial"));
    for (const auto& s : strings(field(j, "tape"))) m.tape.emplace_back(s);
    m.visit_bound = field(j, "visitBound").get<unsigned>();
    for (const Json& e : field(j, "delta")) {
        std::vector<YhItem> items;
        for (const Json& o : field(e, "out")) {
            if (o.contains("emit")) items.emplace_back(Symbol(str(o, "emit")));
            else items.emplace_back(Spawn{Symbol(str(o, "state")), Symbol(str(o, "write")), move_from(field(o, "move"))});
        }
        m.delta[{Symbol(str(e, "state")), Symbol(str(e, "read"))}] = std::move(items);
    }
    return m;
}

// ---------------------------------------------------------------------------
// ariadne

constexpr std::size_t kMaxTableEntries = 1'000'000;

Json action_json(const AriadneTransducer& a, const AriadneAction& act) {
    using K = AriadneAction::Kind;
    if (act.kind == K::Pop) return {{"pop", act.update}};
    const Move m = act.kind == K::PushLeft ? Move::Left : act.kind == K::PushStay ? Move::Stay : Move::Right;
    return {{"push", move_name(m)}, {"state", a.states.at(act.state)}};
}

Json ariadne_json(const AriadneTransducer& a) {
    Json j = {{"kind", a.accepting.empty() ? "ariadne" : "ariadne-automaton"},
              {"name", a.name},
              {"input", alphabet_json(a.input)},
              {"output", alphabet_json(a.output)},
              {"states", a.states},
              {"initial", a.states.at(a.initial)},
              {"bound", a.bound},
              {"maxProduction", a.max_production}};
    Json order = Json::array();
    for (std::size_t p = 0; p < a.num_states(); ++p)
        for (std::size_t q = 0; q < a.num_states(); ++q)
            if (a.order[p][q]) order.push_back({a.states[p], a.states[q]});
    j["order"] = std::move(order);
    Json updates = Json::array();
    for (const Update& u : a.updates) {
        Json m = Json::object();
        for (std::size_t q = 0; q < u.size(); ++q)
            if (u[q] >= 0) m[a.states[q]] = a.states[u[q]];
        updates.push_back(std::move(m));
    }
    j["updates"] = std::move(updates);
    if (!a.accepting.empty()) {
        Json acc = Json::array();
        for (std::size_t q = 0; q < a.num_states(); ++q)
            if (a.accepting[q]) acc.push_back(a.states[q]);
        j["accepting"] = std::move(acc);
    }

    // δ as a table over every local view of length 1..k
    std::vector<Symbol> letters = a.input.symbols();
    letters.push_back(begin_marker());
    letters.push_back(end_marker());
    Json delta = Json::array();
    std::size_t visited = 0;
    std::vector<int> view;
    auto walk = [&](auto&& self) -> void {
        if (!view.empty()) {
            for (Symbol c : letters) {
                if (++visited > kMaxTableEntries)
                    throw Error("CapExceeded", "δ table of " + a.name + " exceeds " + std::to_string(kMaxTableEntries));
                const auto st = a.delta(c, view);
                if (!st) continue;
                Json v = Json::array();
                for (int q : view) v.push_back(a.states[q]);
                delta.push_back({{"letter", c.name()},
                                 {"view", std::move(v)},
                                 {"produce", word_json(st->production)},
                                 {"action", action_json(a, st->action)}});
            }
        }
        if (view.size() == a.bound) return;
        for (int q = 0; q < static_cast<int>(a.num_states()); ++q) {
            view.push_back(q);
            self(self);
            view.pop_back();
        }
    };
    walk(walk);
    j["delta"] = std::move(delta);
    return j;
}

AriadneTransducer ariadne_from(const Json& j) {
    AriadneTransducer a;
    a.name = j.value("name", "ariadne");
    a.input = alphabet_from(field(j, "input"));
    a.output = j.contains("output") ? alphabet_from(j.at("output")) : Alphabet();
    a.states = strings(field(j, "states"));
    a.initial = a.state_id(str(j, "initial"));
    a.bound = field(j, "bound").get<unsigned>();
    a.max_production = j.value("maxProduction", std::size_t{1});
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : field(j, "order")) {
        const auto pq = strings(e);
        if (pq.size() != 2) schema("order edges are pairs");
        edges.emplace_back(a.state_id(pq[0]), a.state_id(pq[1]));
    }
    a.set_order(edges);
    for (const Json& u : field(j, "updates")) {
        if (!u.is_object()) schema("updates are objects");
        Update upd(a.num_states(), -1);
        for (const auto& [from, to] : u.items()) upd[a.state_id(from)] = a.state_id(to.get<std::string>());
        a.updates.push_back(std::move(upd));
    }
    if (j.contains("accepting")) {
        a.accepting.assign(a.num_states(), false);
        for (const auto& q : strings(j.at("accepting"))) a.accepting[a.state_id(q)] = true;
    }
    AriadneTable table;
    for (const Json& e : field(j, "delta")) {
        std::vector<int> view;
        for (const auto& q : strings(field(e, "view"))) view.push_back(a.state_id(q));
        const Json& act = field(e, "action");
        AriadneStep st;
        st.production = e.contains("produce") ? word_from(e.at("produce")) : Word{};
        if (act.contains("pop")) {
            st.action = AriadneAction::pop(act.at("pop").get<int>());
            if (st.action.update < 0 || static_cast<std::size_t>(st.action.update) >= a.updates.size())
                schema("pop refers to a missing update");
        } else {
            st.action = AriadneAction::push(move_from(field(act, "push")), a.state_id(str(act, "state")));
        }
        table[{Symbol(str(e, "letter")), std::move(view)}] = std::move(st);
    }
    a.delta = table_delta(std::move(table));
    a.validate();
    return a;
}

// ---------------------------------------------------------------------------
// althennie

Json posbool_json(const PosBool& f) {
    switch (f.kind) {
    case PosBool::Kind::True: return {{"op", "true"}};
    case PosBool::Kind::False: return {{"op", "false"}};
    case PosBool::Kind::Atom:
        return {{"op", "atom"}, {"state", f.atom.state.name()}, {"write", f.atom.write.name()}, {"move", move_name(f.atom.move)}};
    case PosBool::Kind::And:
    case PosBool::Kind::Or: {
        Json args = Json::array();
        for (const auto& x : f.args) args.push_back(posbool_json(x));
        return {{"op", f.kind == PosBool::Kind::And ? "and" : "or"}, {"args", std::move(args)}};
    }
    }
    return {};
}

PosBool posbool_from(const Json& j) {
    const std::string op = str(j, "op");
    if (op == "true") return PosBool::top();
    if (op == "false") return PosBool::bottom();
    if (op == "atom") return PosBool::make_atom(Symbol(str(j, "state")), Symbol(str(j, "write")), move_from(field(j, "move")));
    if (op != "and" && op != "or") schema("bad positive formula op " + op);
    std::vector<PosBool> args;
    for (const Json& x : field(j, "args")) args.push_back(posbool_from(x));
    return op == "and" ? PosBool::all(std::move(args)) : PosBool::any(std::move(args));
}

Json ah_json(const AlternatingHennieAutomaton& h) {
    if (h.delta || h.decorate) throw Error("NotSerializable", h.name + " has a procedural δ; write its generator document");
    Json states = Json::array(), delta = Json::array();
    for (Symbol q : h.states) states.push_back(q.name());
    for (const auto& [key, f] : h.table)
        delta.push_back({{"state", key.first.name()}, {"read", key.second.name()}, {"formula", posbool_json(f)}});
    return {{"kind", "althennie"},     {"name", h.name},        {"input", alphabet_json(h.input)},
            {"states", std::move(states)}, {"initial", h.initial.name()}, {"visitBound", h.visit_bound},
            {"delta", std::move(delta)}};
}

AlternatingHennieAutomaton ah_from(const Json& j) {
    AlternatingHennieAutomaton h;
    h.name = j.value("name", "althennie");
    h.input = alphabet_from(field(j, "input"));
    for (const auto& s : strings(field(j, "states"))) h.states.emplace_back(s);
    h.initial = Symbol(str(j, "initial"));
    h.visit_bound = field(j, "visitBound").get<unsigned>();
    for (const Json& e : field(j, "delta"))
        h.table[{Symbol(str(e, "state")), Symbol(str(e, "read"))}] = posbool_from(field(e, "formula"));
    return h;
}

Model from_generator(const Json& j) {
    const std::string gen = str(j, "generator");
    const Model src = model_from_json(field(j, "source"));
    if (gen == "lemma6.1") {
        if (!std::holds_alternative<YieldHennieMachine>(src)) schema("lemma6.1 needs a yhennie source");
        return yh_to_ariadne(std::get<YieldHennieMachine>(src));
    }
    if (gen == "lemma8.3") {
        if (!std::holds_alternative<AriadneTransducer>(src)) schema("lemma8.3 needs an ariadne source");
        return ariadne_to_althennie(std::get<AriadneTransducer>(src));
    }
    if (gen == "stacks") {
        if (!std::holds_alternative<AriadneTransducer>(src)) schema("stacks needs an ariadne source");
        return ariadne_to_setinterp(std::get<AriadneTransducer>(src));
    }
    schema("unknown generator " + gen);
}

} // namespace

// ---------------------------------------------------------------------------

Json formula_to_json(const Formula& f) {
    const mso::Node& n = f.node();
    Json j = {{"op", mso::op_name(n.op)}};
    switch (n.op) {
    case Op::ExistsFO:
    case Op::ForAllFO: j["var"] = n.var; j["body"] = formula_to_json(n.args[0]); break;
    case Op::ExistsMon:
    case Op::ForAllMon:
        j["var"] = n.var;
        j["colours"] = n.colours;
        j["body"] = formula_to_json(n.args[0]);
        break;
    case Op::Not: j["body"] = formula_to_json(n.args[0]); break;
    case Op::Or:
    case Op::And:
    case Op::Implies:
    case Op::Iff: {
        Json args = Json::array();
        for (const auto& a : n.args) args.push_back(formula_to_json(a));
        j["args"] = std::move(args);
        break;
    }
    case Op::MonEq: j["var"] = n.var; j["pos"] = n.var2; j["colour"] = n.colour; break;
    case Op::Less:
    case Op::Equal:
    case Op::Succ: j["x"] = n.var; j["y"] = n.var2; break;
    case Op::Letter: j["letter"] = n.letter.name(); j["x"] = n.var; break;
    case Op::First:
    case Op::Last: j["x"] = n.var; break;
    case Op::True:
    case Op::False: break;
    }
    return j;
}

Formula formula_from_json(const Json& j) {
    const std::string op = str(j, "op");
    auto body = [&] { return formula_from_json(field(j, "body")); };
    auto args = [&] {
        std::vector<Formula> out;
        for (const Json& a : field(j, "args")) out.push_back(formula_from_json(a));
        return out;
    };
    if (op == "exists") return Formula::exists(str(j, "var"), body());
    if (op == "forall") return Formula::forall(str(j, "var"), body());
    if (op == "existsMon") return Formula::exists_mon(str(j, "var"), strings(field(j, "colours")), body());
    if (op == "forallMon") return Formula::forall_mon(str(j, "var"), strings(field(j, "colours")), body());
    if (op == "not") return Formula::lnot(body());
    if (op == "or") return Formula::lor(args());
    if (op == "and") return Formula::land(args());
    if (op == "implies" || op == "iff") {
        auto a = args();
        if (a.size() != 2) schema(op + " takes two arguments");
        return op == "implies" ? Formula::implies(a[0], a[1]) : Formula::iff(a[0], a[1]);
    }
    if (op == "monEq") return Formula::mon_eq(str(j, "var"), str(j, "pos"), str(j, "colour"));
    if (op == "less") return Formula::less(str(j, "x"), str(j, "y"));
    if (op == "equal") return Formula::equal(str(j, "x"), str(j, "y"));
    if (op == "succ") return Formula::succ(str(j, "x"), str(j, "y"));
    if (op == "letter") return Formula::letter(Symbol(str(j, "letter")), str(j, "x"));
    if (op == "first") return Formula::first(str(j, "x"));
    if (op == "last") return Formula::last(str(j, "x"));
    if (op == "true") return Formula::top();
    if (op == "false") return Formula::bottom();
    schema("unknown formula op " + op);
}

Json model_to_json(const Model& m) {
    if (const auto* phi = std::get_if<SetInterpretation>(&m)) return interp_json(*phi);
    if (const auto* y = std::get_if<YieldHennieMachine>(&m)) return yh_json(*y);
    if (const auto* a = std::get_if<AriadneTransducer>(&m)) return ariadne_json(*a);
    return ah_json(std::get<AlternatingHennieAutomaton>(m));
}

std::string document_kind(const Json& j) { return str(j, "kind"); }

Model model_from_json(const Json& j) {
    try {
        if (j.contains("generator")) return from_generator(j);
        const std::string kind = document_kind(j);
        if (kind == "setinterp") return interp_from(j);
        if (kind == "yhennie") return yh_from(j);
        if (kind == "ariadne" || kind == "ariadne-automaton") {
            AriadneTransducer a = ariadne_from(j);
            if (kind == "ariadne-automaton" && a.accepting.empty()) a.accepting.assign(a.num_states(), false);
            return a;
        }
        if (kind == "althennie") return ah_from(j);
        schema("unknown kind " + kind);
    } catch (const nlohmann::json::exception& e) {
        schema(e.what());
    }
}

Json translated_document(const Json& source, std::string_view to) {
    const std::string from = document_kind(source);
    auto wrap = [](const char* kind, const char* gen, Json src) {
        return Json{{"kind", kind}, {"generator", gen}, {"source", std::move(src)}};
    };
    const bool automaton = from == "ariadne-automaton";
    if (from == "yhennie") {
        Json a = wrap("ariadne", "lemma6.1", source);
        if (to == "ariadne") return a;
        if (to == "althennie") return wrap("althennie", "lemma8.3", std::move(a));
        if (to == "setinterp") return wrap("setinterp", "stacks", std::move(a));
    } else if (from == "ariadne" || automaton) {
        if (to == "althennie") return wrap("althennie", "lemma8.3", source);
        if (to == "setinterp") return wrap("setinterp", "stacks", source);
    }
    throw UsageError("cannot translate " + from + " to " + std::string(to));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::vector<std::pair<std::string, Json>> fixture_documents() {
    std::vector<std::pair<std::string, Json>> out;
    auto file = [](std::string name) {
        std::string f;
        for (char c : name)
            if (c != '_') f += c;
        return f;
    };
    for (const auto& name : builtin_interpretation_names())
        out.emplace_back(file(name) + ".json", model_to_json(builtin_interpretation(name)));
    for (const auto& name : builtin_yh_names()) {
        const Json yh = model_to_json(builtin_yh(name));
        out.emplace_back(file(name) + "-yh.json", yh);
        out.emplace_back(file(name) + "-ariadne.json", translated_document(yh, "ariadne"));
    }
    const Json counter = model_to_json(builtin_ariadne("subwords"));
    const Json acceptor = model_to_json(builtin_ariadne("subwords_acceptor"));
    out.emplace_back("subwords-counter.json", counter);
    out.emplace_back("subwords-counter-setinterp.json", translated_document(counter, "setinterp"));
    out.emplace_back("subwords-acceptor.json", acceptor);
    out.emplace_back("subwords-acceptor-althennie.json", translated_document(acceptor, "althennie"));
    return out;
}

} // namespace expreg
