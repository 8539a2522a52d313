#include "expreg/structure.hpp"

#include <algorithm>
#include <map>

#include "expreg/error.hpp"

namespace expreg {

bool is_split(const Split& s, std::size_t n) {
    return s.dir == Dir::Right ? s.pos < n + 1 : (s.pos > 0 && s.pos <= n + 1);
}

bool contains(const Split& s, std::size_t position) {
    return s.dir == Dir::Right ? position <= s.pos : position >= s.pos;
}

Split opposite(const Split& s) {
    return s.dir == Dir::Right ? Split{s.pos + 1, Dir::Left} : Split{s.pos - 1, Dir::Right};
}

std::optional<Split> successor(const Split& s, std::size_t n) {
    if (s.dir == Dir::Right) {
        if (s.pos >= n) return std::nullopt;
        return Split{s.pos + 1, Dir::Right};
    }
    if (s.pos <= 1) return std::nullopt;
    return Split{s.pos - 1, Dir::Left};
}

std::vector<Split> all_splits(std::size_t n) {
    std::vector<Split> out;
    for (std::size_t i = 0; i <= n; ++i) out.push_back({i, Dir::Right});
    for (std::size_t i = 1; i <= n + 1; ++i) out.push_back({i, Dir::Left});
    return out;
}

std::string to_string(const Split& s) { return (s.dir == Dir::Right ? "→" : "←") + std::to_string(s.pos); }

Split parse_split(std::string_view text) {
    static const std::pair<std::string_view, Dir> prefixes[] = {
        {"→", Dir::Right}, {"->", Dir::Right}, {"R", Dir::Right},
        {"←", Dir::Left},  {"<-", Dir::Left},  {"L", Dir::Left},
    };
    for (const auto& [p, d] : prefixes) {
        if (text.substr(0, p.size()) != p) continue;
        const std::string_view digits = text.substr(p.size());
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            break;
        return Split{std::stoul(std::string(digits)), d};
    }
    throw UsageError("bad split '" + std::string(text) + "'");
}

bool s_equivalent(const Colouring& a, const Colouring& b, const Split& s) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (contains(s, i) && a[i] != b[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------

SimplicityContext::SimplicityContext(std::vector<Colouring> configs, std::size_t n, Checker checker)
    : configs_(std::move(configs)), n_(n), checker_(checker) {
    for (const Split& s : all_splits(n_)) {
        std::map<Colouring, int> ids;
        std::vector<int> row;
        for (const Colouring& c : configs_) {
            Colouring r;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (contains(s, i)) r.push_back(c[i]);
            row.push_back(ids.emplace(std::move(r), static_cast<int>(ids.size())).first->second);
        }
        classes_.push_back(std::move(row));
        class_count_.push_back(static_cast<int>(ids.size()));
    }
}

SimplicityContext SimplicityContext::of(const SetInterpretation& phi, const Word& w, Checker checker,
                                        const Caps& caps) {
    const SetInterpretation marked = phi.marked ? phi : to_marked(phi);
    std::vector<Colouring> cs;
    for (auto& c : configurations(marked, w, CheckMode::Auto, caps)) cs.push_back(std::move(c.colouring));
    return SimplicityContext(std::move(cs), w.size(), checker);
}

Interval SimplicityContext::full() const {
    if (configs_.empty()) throw Error("EmptyInterval", "no configurations");
    return {0, configs_.size() - 1};
}

std::size_t SimplicityContext::split_index(const Split& s) const {
    if (!is_split(s, n_)) throw Error("NotASplit", to_string(s));
    return s.dir == Dir::Right ? s.pos : n_ + s.pos;
}

namespace {

std::size_t opposite_index(std::size_t s, std::size_t n) {
    // →i at i, ←i at n+i; opposite(→i) = ←(i+1)
    return s <= n ? n + s + 1 : s - n - 1;
}

std::optional<std::uint64_t> memo_key(const Interval& I, std::size_t s, int d) {
    if (I.hi >= (1u << 21) || s >= (1u << 11) || d + 1 >= (1 << 11)) return std::nullopt;
    return static_cast<std::uint64_t>(I.lo) | static_cast<std::uint64_t>(I.hi) << 21 |
           static_cast<std::uint64_t>(s) << 42 | static_cast<std::uint64_t>(d + 1) << 53;
}

} // namespace

bool SimplicityContext::check(const Interval& I, std::size_t s, int d, Checker which) {
    if (I.lo == I.hi) return d >= -1;
    if (d < 0) return false;
    auto& memo = memo_[which == Checker::Literal ? 0 : 1];
    const auto key = memo_key(I, s, d);
    if (key) {
        const auto it = memo.find(*key);
        if (it != memo.end()) return it->second;
    }
    const bool r = which == Checker::Literal ? literal(I, s, d) : gap(I, s, d);
    if (key) memo.emplace(*key, r);
    return r;
}

// every subinterval J either meets A₀'s class or is (d-1)-simple at the opposite split
bool SimplicityContext::literal(const Interval& I, std::size_t s, int d) {
    const std::size_t bar = opposite_index(s, n_);
    for (int a0 = 0; a0 < class_count_[s]; ++a0) {
        bool ok = true;
        for (std::size_t a = I.lo; ok && a <= I.hi; ++a) {
            bool met = false;
            for (std::size_t b = a; ok && b <= I.hi; ++b) {
                met = met || cls(b, s) == a0;
                if (met) continue;
                ok = d > 0 && check({a, b}, bar, d - 1, Checker::Literal);
            }
        }
        if (ok) return true;
    }
    return false;
}

// maximal gaps between members of K = A₀'s class within I
bool SimplicityContext::gap(const Interval& I, std::size_t s, int d) {
    const std::size_t bar = opposite_index(s, n_);
    std::vector<int> present;
    for (std::size_t i = I.lo; i <= I.hi; ++i)
        if (std::find(present.begin(), present.end(), cls(i, s)) == present.end()) present.push_back(cls(i, s));
    for (int a0 : present) {
        bool ok = true;
        std::size_t i = I.lo;
        while (ok && i <= I.hi) {
            if (cls(i, s) == a0) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 <= I.hi && cls(j + 1, s) != a0) ++j;
            ok = d > 0 && check({i, j}, bar, d - 1, Checker::Gap);
            i = j + 1;
        }
        if (ok) return true;
    }
    return false;
}

bool SimplicityContext::is_d_simple(const Interval& I, const Split& s, int d) {
    if (I.lo > I.hi || I.hi >= configs_.size()) throw Error("EmptyInterval", "interval out of range");
    const std::size_t si = split_index(s);
    if (checker_ != Checker::Both) return check(I, si, d, checker_);
    const bool lit = check(I, si, d, Checker::Literal);
    const bool fast = check(I, si, d, Checker::Gap);
    if (lit != fast)
        throw Error("Internal", "simplicity checkers disagree on [" + std::to_string(I.lo) + "," +
                                    std::to_string(I.hi) + "] at " + to_string(s) + ", d=" + std::to_string(d));
    return lit;
}

int SimplicityContext::simplicity(const Interval& I, const Split& s) {
    for (int d = -1;; ++d)
        if (is_d_simple(I, s, d)) return d;
}

SimplicityTable simplicity_table(SimplicityContext& ctx, bool keep_cells, const Caps& caps) {
    const std::uint64_t m = ctx.size();
    const std::uint64_t cells = m * (m + 1) / 2 * 2 * (ctx.word_length() + 1);
    if (cells > caps.max_nodes)
        throw Error("CapExceeded", std::to_string(cells) + " interval/split cells (cap " +
                                       std::to_string(caps.max_nodes) + ")");
    SimplicityTable t;
    const auto splits = all_splits(ctx.word_length());
    for (std::size_t lo = 0; lo < m; ++lo) {
        for (std::size_t hi = lo; hi < m; ++hi) {
            for (const Split& s : splits) {
                const int v = ctx.simplicity({lo, hi}, s);
                t.max = std::max(t.max, v);
                if (keep_cells) t.cells.push_back({{lo, hi}, s, v});
            }
        }
    }
    return t;
}

SimplicityTable simplicity_table(const SetInterpretation& phi, const Word& w, bool keep_cells, Checker checker,
                                 const Caps& caps) {
    SimplicityContext ctx = SimplicityContext::of(phi, w, checker, caps);
    return simplicity_table(ctx, keep_cells, caps);
}

// ---------------------------------------------------------------------------

FunnelCheck validate_funnel(const FunnelCandidate& c, const BasisMember& basis, SimplicityContext& ctx) {
    auto fail = [](int item, std::size_t at, std::string detail) { return FunnelCheck{false, item, at, std::move(detail)}; };
    const auto& st = c.steps;
    if (st.empty() || ctx.size() == 0 || !(st[0].first == ctx.full())) return fail(1, 0, "I0 is not the full interval");
    if (!(st[0].second == Split{0, Dir::Right})) return fail(2, 0, "s0 is not →0");
    for (std::size_t k = 0; k < st.size(); ++k) {
        const Interval& I = st[k].first;
        if (I.lo > I.hi || I.hi >= ctx.size()) return fail(3, k, "interval out of range");
        if (!is_split(st[k].second, ctx.word_length())) return fail(5, k, "not a split");
    }
    std::size_t lo = 0, hi = ctx.size() - 1;
    for (const auto& [I, s] : st) {
        lo = std::max(lo, I.lo);
        hi = std::min(hi, I.hi);
    }
    if (lo > hi) return fail(3, st.size() - 1, "empty intersection");
    for (std::size_t k = 0; k < st.size(); ++k)
        if (!basis(st[k].first, st[k].second)) return fail(4, k, "not a basis interval");
    for (std::size_t k = 0; k + 1 < st.size(); ++k) {
        const Split& s = st[k].second;
        const Split& t = st[k + 1].second;
        const auto suc = successor(s, ctx.word_length());
        if (!(t == s || t == opposite(s) || (suc && t == *suc)))
            return fail(5, k + 1, to_string(s) + " then " + to_string(t));
    }
    for (std::size_t k = 0; k < st.size(); ++k) {
        for (std::size_t k2 = k + 1; k2 < st.size(); ++k2) {
            const Split& s = st[k].second;
            const Split& t = st[k2].second;
            if (!(t == s || t == opposite(s))) continue;
            const int a = ctx.simplicity(st[k].first, s);
            const int b = ctx.simplicity(st[k2].first, t);
            if (b >= a)
                return fail(6, k2, "simplicity " + std::to_string(b) + " at step " + std::to_string(k2) +
                                       " not below " + std::to_string(a) + " at step " + std::to_string(k));
        }
    }
    return {};
}

} // namespace expreg
