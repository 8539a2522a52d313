#include <map>
#include <memory>

#include "expreg/error.hpp"
#include "expreg/xlate.hpp"

namespace expreg {

namespace {

std::string item_name(const YhItem& item) {
    if (const Symbol* g = std::get_if<Symbol>(&item)) return g->name();
    const Spawn& s = std::get<Spawn>(item);
    return "(" + s.state.name() + "," + s.write.name() + "," + std::string(move_name(s.move)) + ")";
}

struct YhExpansion {
    enum class Kind { Top, Plain, Expansion };
    struct Info {
        Kind kind;
        Symbol q;
        std::vector<YhItem> rest; // Expansion
    };
    YieldHennieMachine m;
    std::vector<Info> info;
    std::map<Symbol, int> plain;
    std::map<std::pair<Symbol, std::vector<std::string>>, int> expansion;

    static std::vector<std::string> key(const std::vector<YhItem>& items, std::size_t from) {
        std::vector<std::string> k;
        for (std::size_t i = from; i < items.size(); ++i) k.push_back(item_name(items[i]));
        return k;
    }

    int expansion_id(Symbol q, const std::vector<YhItem>& items, std::size_t from) const {
        return expansion.at({q, key(items, from)});
    }
};

} // namespace

AriadneTransducer yh_to_ariadne(const YieldHennieMachine& m) {
    auto ctx = std::make_shared<YhExpansion>();
    ctx->m = m;
    AriadneTransducer a;
    a.name = m.name + "_ariadne";
    a.input = m.input;
    a.output = m.output;

    auto add = [&](std::string name, YhExpansion::Info info) {
        a.states.push_back(std::move(name));
        ctx->info.push_back(std::move(info));
        return static_cast<int>(a.states.size() - 1);
    };
    const int top = add("⊤", {YhExpansion::Kind::Top, {}, {}});
    for (Symbol q : m.states) ctx->plain[q] = add(q.name(), {YhExpansion::Kind::Plain, q, {}});
    auto add_expansion = [&](Symbol q, const std::vector<YhItem>& items, std::size_t from) {
        auto k = YhExpansion::key(items, from);
        if (ctx->expansion.count({q, k})) return;
        std::string name = "(" + q.name() + ",";
        for (const auto& s : k) name += s;
        name += ")";
        const int id =
            add(name, {YhExpansion::Kind::Expansion, q,
                       std::vector<YhItem>(items.begin() + static_cast<long>(from), items.end())});
        ctx->expansion[{q, std::move(k)}] = id;
    };
    for (Symbol q : m.states) add_expansion(q, {}, 0);
    for (const auto& [key, items] : m.delta)
        for (std::size_t from = 0; from <= items.size(); ++from) add_expansion(key.first, items, from);
    if (!ctx->plain.count(m.initial)) throw Error("NotWellFormed", "initial state is not a state");
    a.initial = ctx->plain.at(m.initial);
    a.bound = 2 * m.visit_bound + 1;

    const std::size_t n = a.states.size();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) != top) edges.emplace_back(static_cast<int>(i), top);
        if (ctx->info[i].kind != YhExpansion::Kind::Expansion) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (ctx->info[j].kind == YhExpansion::Kind::Expansion && ctx->info[i].rest.size() > ctx->info[j].rest.size())
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    a.set_order(edges);

    Update finish(n, -1), nextchild(n, -1);
    for (const auto& [q, id] : ctx->plain) finish[id] = top;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& inf = ctx->info[i];
        if (inf.kind == YhExpansion::Kind::Expansion && !inf.rest.empty())
            nextchild[i] = ctx->expansion_id(inf.q, inf.rest, 1);
    }
    a.updates = {finish, nextchild};
    const int FINISH = 0, NEXTCHILD = 1;
    a.validate();

    a.delta = [ctx, top, FINISH, NEXTCHILD](Symbol letter, std::span<const int> view) -> std::optional<AriadneStep> {
        using Act = AriadneAction;
        const int t = view.back();
        if (t == top) return AriadneStep{{}, Act::pop(NEXTCHILD)};
        const auto& inf = ctx->info[t];
        if (inf.kind == YhExpansion::Kind::Plain) {
            Symbol theta = letter;
            if (view.size() > 1) {
                const auto& below = ctx->info[view[view.size() - 2]];
                if (below.kind != YhExpansion::Kind::Expansion || below.rest.empty()) return std::nullopt;
                const Spawn* s = std::get_if<Spawn>(&below.rest.front());
                if (!s) return std::nullopt;
                theta = s->write;
            }
            const auto& items = ctx->m.transition(inf.q, theta);
            return AriadneStep{{}, Act::push(Move::Stay, ctx->expansion_id(inf.q, items, 0))};
        }
        if (inf.rest.empty()) return AriadneStep{{}, Act::pop(FINISH)};
        if (const Symbol* g = std::get_if<Symbol>(&inf.rest.front())) return AriadneStep{{*g}, Act::push(Move::Stay, top)};
        const Spawn& s = std::get<Spawn>(inf.rest.front());
        return AriadneStep{{}, Act::push(s.move, ctx->plain.at(s.state))};
    };
    return a;
}

} // namespace expreg
