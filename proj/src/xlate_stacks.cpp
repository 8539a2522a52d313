#include <map>
#include <memory>
#include <mutex>

#include "expreg/error.hpp"
#include "expreg/xlate.hpp"

namespace expreg {

LocationColouring canonical_encoding(const Stack& s, std::size_t marked_length) {
    LocationColouring out(marked_length);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Move dir = Move::Stay;
        if (i + 1 < s.size()) {
            if (s[i + 1].pos > s[i].pos) dir = Move::Right;
            else if (s[i + 1].pos < s[i].pos) dir = Move::Left;
        }
        out.at(s[i].pos).push_back({s[i].state, dir});
    }
    return out;
}

std::optional<Stack> induced_stack(const LocationColouring& a1, std::size_t initial_position) {
    const std::size_t n = a1.size();
    if (initial_position >= n || a1[initial_position].empty()) return std::nullopt;
    std::vector<std::size_t> height(n, 0); // enumerated locations per position
    Stack out;
    std::size_t pos = initial_position;
    while (true) {
        const Location& loc = a1[pos][height[pos]];
        ++height[pos];
        out.push_back({loc.state, pos});
        const long next = static_cast<long>(pos) + offset(loc.dir);
        if (next < 0 || next >= static_cast<long>(n)) return std::nullopt;
        pos = static_cast<std::size_t>(next);
        if (height[pos] >= a1[pos].size()) break;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (height[i] != a1[i].size()) return std::nullopt;
    return out;
}

namespace {

std::uint64_t base_of(const AriadneTransducer& a) { return 3 * static_cast<std::uint64_t>(a.num_states()); }

int dir_digit(Move m) { return m == Move::Left ? 0 : m == Move::Stay ? 1 : 2; }
Move digit_dir(std::uint64_t d) { return d == 0 ? Move::Left : d == 1 ? Move::Stay : Move::Right; }

std::uint64_t mul_checked(std::uint64_t x, std::uint64_t y) {
    if (y != 0 && x > UINT64_MAX / y) throw Error("CapExceeded", "location colour code overflows 64 bits");
    return x * y;
}

std::uint64_t add_checked(std::uint64_t x, std::uint64_t y) {
    if (x > UINT64_MAX - y) throw Error("CapExceeded", "location colour code overflows 64 bits");
    return x + y;
}

} // namespace

std::uint64_t encode_locations(const AriadneTransducer& a, const std::vector<Location>& seq) {
    const std::uint64_t base = base_of(a);
    std::uint64_t code = 0;
    for (const auto& l : seq)
        code = add_checked(mul_checked(code, base), static_cast<std::uint64_t>(l.state) * 3 + dir_digit(l.dir) + 1);
    return code;
}

std::optional<std::vector<Location>> decode_locations(const AriadneTransducer& a, std::uint64_t code) {
    const std::uint64_t base = base_of(a);
    std::vector<Location> seq;
    while (code > 0) {
        const std::uint64_t d = (code - 1) % base;
        code = (code - 1) / base;
        seq.push_back({static_cast<int>(d / 3), digit_dir(d % 3)});
    }
    if (seq.size() > a.bound) return std::nullopt;
    return std::vector<Location>(seq.rbegin(), seq.rend());
}

std::uint64_t location_colour_count(const AriadneTransducer& a) {
    const std::uint64_t base = base_of(a);
    std::uint64_t total = 0, layer = 1;
    for (unsigned m = 0; m <= a.bound; ++m) {
        total = add_checked(total, layer);
        if (m < a.bound) layer = mul_checked(layer, base);
    }
    return total;
}

namespace {

struct RunIndex {
    AriadneRun run;
    std::map<Stack, std::size_t> index;
};

RunIndex index_run(const AriadneTransducer& a, const Word& w, const Caps& caps) {
    RunIndex r;
    r.run = run_ariadne(a, w, {true, false}, caps);
    for (std::size_t p = 0; p < r.run.stacks.size(); ++p) r.index.emplace(r.run.stacks[p], p);
    return r;
}

const Word& production_of(const RunIndex& r, std::size_t p) {
    static const Word none;
    return p < r.run.productions.size() ? r.run.productions[p] : none;
}

} // namespace

std::vector<AriadneConfiguration> ariadne_configurations(const AriadneTransducer& a, const Word& w, const Caps& caps) {
    const RunIndex r = index_run(a, w, caps);
    std::vector<AriadneConfiguration> out;
    for (std::size_t p = 0; p < r.run.stacks.size(); ++p) {
        const Word& prod = production_of(r, p);
        for (std::size_t j = 1; j <= prod.size(); ++j)
            out.push_back({canonical_encoding(r.run.stacks[p], w.size() + 2), j, p, prod[j - 1]});
    }
    return out;
}

namespace {

struct Realization {
    AriadneTransducer a;
    std::uint64_t n = 1;
    std::mutex mu;
    std::map<Word, std::shared_ptr<const RunIndex>> runs;

    std::shared_ptr<const RunIndex> run_for(const Word& marked) {
        const Word w(marked.begin() + 1, marked.end() - 1);
        std::lock_guard lock(mu);
        auto& slot = runs[w];
        if (!slot) slot = std::make_shared<const RunIndex>(index_run(a, w, Caps::defaults()));
        return slot;
    }

    Colouring colour(const LocationColouring& a1, std::size_t j) const {
        Colouring c;
        for (const auto& seq : a1) c.push_back(add_checked(mul_checked(encode_locations(a, seq), n), j - 1));
        return c;
    }

    struct Decoded {
        std::size_t p;
        std::size_t j;
    };

    /// The (p, j) identified by a colouring, if it is a configuration.
    std::optional<Decoded> decode(const RunIndex& r, const Colouring& c) const {
        if (c.empty()) return std::nullopt;
        const std::uint64_t j = c.front() % n + 1;
        LocationColouring a1;
        for (Colour x : c) {
            if (x % n + 1 != j) return std::nullopt;
            auto seq = decode_locations(a, x / n);
            if (!seq) return std::nullopt;
            for (const auto& l : *seq)
                if (l.state < 0 || static_cast<std::size_t>(l.state) >= a.num_states()) return std::nullopt;
            a1.push_back(std::move(*seq));
        }
        const auto s = induced_stack(a1);
        if (!s || canonical_encoding(*s, a1.size()) != a1) return std::nullopt;
        const auto it = r.index.find(*s);
        if (it == r.index.end()) return std::nullopt;
        if (j > production_of(r, it->second).size()) return std::nullopt;
        return Decoded{it->second, static_cast<std::size_t>(j)};
    }
};

} // namespace

SetInterpretation ariadne_to_setinterp(const AriadneTransducer& a) {
    auto ctx = std::make_shared<Realization>();
    ctx->a = a;
    ctx->n = std::max<std::size_t>(1, a.max_production);

    SetInterpretation phi;
    phi.name = a.name + "_setinterp";
    phi.unnamed_colours = mul_checked(location_colour_count(a), ctx->n);
    phi.input = a.input;
    phi.output = a.output;
    phi.conf = PredicateProvider::oracle(
        [ctx](const Word& marked, std::span<const Colouring* const> args) {
            return ctx->decode(*ctx->run_for(marked), *args[0]).has_value();
        },
        1);
    phi.less = PredicateProvider::oracle(
        [ctx](const Word& marked, std::span<const Colouring* const> args) {
            const auto r = ctx->run_for(marked);
            const auto x = ctx->decode(*r, *args[0]);
            const auto y = ctx->decode(*r, *args[1]);
            if (!x || !y) return false;
            return x->p < y->p || (x->p == y->p && x->j < y->j);
        },
        2);
    for (Symbol g : a.output.symbols()) {
        phi.letters.emplace_back(g, PredicateProvider::oracle(
                                        [ctx, g](const Word& marked, std::span<const Colouring* const> args) {
                                            const auto r = ctx->run_for(marked);
                                            const auto x = ctx->decode(*r, *args[0]);
                                            return x && production_of(*r, x->p)[x->j - 1] == g;
                                        },
                                        1));
    }
    phi.marked = true;
    phi.candidates = [ctx](const Word& marked) {
        const auto r = ctx->run_for(marked);
        std::vector<Colouring> out;
        for (std::size_t p = 0; p < r->run.stacks.size(); ++p) {
            const LocationColouring a1 = canonical_encoding(r->run.stacks[p], marked.size());
            for (std::size_t j = 1; j <= production_of(*r, p).size(); ++j) out.push_back(ctx->colour(a1, j));
        }
        return out;
    };
    return phi;
}

} // namespace expreg
