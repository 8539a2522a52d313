#include "expreg/mso.hpp"

#include <set>

namespace expreg::mso {

namespace {

struct TypeBuilder {
    const Word& w;

    std::string atomic(const Env& env) const {
        std::string key = "[";
        for (const auto& [x, p] : env.fo) key += x + ":" + w[p].name() + ";";
        for (auto i = env.fo.begin(); i != env.fo.end(); ++i) {
            for (auto j = std::next(i); j != env.fo.end(); ++j)
                key += i->second < j->second ? '<' : i->second == j->second ? '=' : '>';
        }
        key += "|";
        for (const auto& [X, v] : env.mon) {
            key += X + "/" + std::to_string(v.colours.size()) + ":";
            for (const auto& [x, p] : env.fo) key += std::to_string(v.values[p]) + ",";
            key += ";";
        }
        return key + "]";
    }

    std::string key(const Env& env, unsigned q) const {
        std::string out = atomic(env);
        if (q == 0) return out;
        const std::size_t n = w.size();
        std::set<std::string> fo_children;
        const std::string x = "~x" + std::to_string(q);
        for (std::size_t p = 0; p < n; ++p) {
            Env ext = env;
            ext.fo[x] = p;
            fo_children.insert(key(ext, q - 1));
        }
        out += "E{";
        for (const auto& k : fo_children) out += k;
        out += "}";
        for (unsigned m = 1; m <= q; ++m) {
            const std::string X = "~X" + std::to_string(q) + "_" + std::to_string(m);
            MonadicValue v;
            for (unsigned c = 0; c < m; ++c) v.colours.push_back(std::to_string(c));
            v.values.assign(n, 0);
            std::set<std::string> children;
            while (true) {
                Env ext = env;
                ext.mon[X] = v;
                children.insert(key(ext, q - m));
                std::size_t i = 0;
                while (i < n && ++v.values[i] == m) v.values[i++] = 0;
                if (i == n) break;
            }
            out += "M" + std::to_string(m) + "{";
            for (const auto& k : children) out += k;
            out += "}";
        }
        return out;
    }
};

} // namespace

RankQType type_q(const Word& w, const Env& env, unsigned q, TypeCaps caps) {
    if (q > caps.max_rank || w.size() > caps.max_length)
        throw Error("CapExceeded", "type_q beyond rank " + std::to_string(caps.max_rank) +
                                       " / length " + std::to_string(caps.max_length));
    for (const auto& [x, p] : env.fo)
        if (p >= w.size()) throw Error("UnboundVariable", x + " is bound outside the word");
    for (const auto& [X, v] : env.mon)
        if (v.values.size() != w.size()) throw Error("ColourOutOfRange", X + " does not colour every position");
    return {q, TypeBuilder{w}.key(env, q)};
}

} // namespace expreg::mso
