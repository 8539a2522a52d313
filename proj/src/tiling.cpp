#include <set>

#include "expreg/error.hpp"
#include "expreg/structure.hpp"

namespace expreg {

std::string to_string(const Step& s) {
    std::string out = s.kind == StepKind::Same ? "same" : s.kind == StepKind::Opp ? "opp" : "suc";
    if (s.label) out += ":" + std::to_string(*s.label);
    return out;
}

Step parse_step(std::string_view text) {
    Step s;
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    if (kind == "same") s.kind = StepKind::Same;
    else if (kind == "opp") s.kind = StepKind::Opp;
    else if (kind == "suc") s.kind = StepKind::Suc;
    else throw UsageError("bad step '" + std::string(text) + "'");
    if (colon != std::string_view::npos) {
        const std::string digits(text.substr(colon + 1));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("bad step label '" + std::string(text) + "'");
        s.label = static_cast<unsigned>(std::stoul(digits));
    }
    return s;
}

std::vector<Block> block_decompose(const Tile& t) {
    std::vector<Block> out;
    if (t.empty()) return out;
    if (t[0].kind == StepKind::Same) throw Error("MalformedTile", "tile starts with same");
    for (std::size_t h = 0; h < t.size(); ++h) {
        if (t[h].kind == StepKind::Same) {
            out.back().last = h;
            continue;
        }
        Block b;
        b.first = b.last = h;
        b.kind = t[h].kind;
        b.entry = out.empty() ? Dir::Right : (out.back().exit == Dir::Right ? Dir::Left : Dir::Right);
        b.exit = b.kind == StepKind::Suc ? b.entry : (b.entry == Dir::Right ? Dir::Left : Dir::Right);
        out.push_back(b);
    }
    return out;
}

namespace {

struct BlockRef {
    std::size_t pos;
    std::size_t index;
    auto operator<=>(const BlockRef&) const = default;
};

struct PathResult {
    std::vector<BlockRef> order;
    std::vector<std::vector<Block>> blocks;
    std::string reason;
};

// index of the m-th block of `bs` with the given entry direction
std::optional<std::size_t> nth_entry(const std::vector<Block>& bs, Dir entry, std::size_t m) {
    for (std::size_t i = 0; i < bs.size(); ++i)
        if (bs[i].entry == entry && m-- == 0) return i;
    return std::nullopt;
}

std::size_t exit_rank(const std::vector<Block>& bs, std::size_t index) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < index; ++i)
        if (bs[i].exit == bs[index].exit) ++m;
    return m;
}

PathResult block_path(const Tiling& t) {
    PathResult r;
    if (t.size() < 2) {
        r.reason = "a tiling needs at least the two marker positions";
        return r;
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        try {
            r.blocks.push_back(block_decompose(t[i]));
        } catch (const Error& e) {
            r.reason = "position " + std::to_string(i) + ": tile starts with same";
            return r;
        }
        total += r.blocks.back().size();
    }
    const auto& first = r.blocks.front();
    const auto& last = r.blocks.back();
    if (first.empty()) {
        r.reason = "leftmost tile has no left entry";
        return r;
    }
    for (const Block& b : first)
        if (b.exit == Dir::Left) {
            r.reason = "leftmost tile has a left exit";
            return r;
        }
    for (const Block& b : last)
        if (b.exit == Dir::Right) {
            r.reason = "rightmost tile has a right exit";
            return r;
        }
    std::set<BlockRef> seen;
    BlockRef cur{0, 0};
    while (true) {
        if (!seen.insert(cur).second) {
            r.order.clear();
            r.reason = "block graph has a cycle";
            return r;
        }
        r.order.push_back(cur);
        const auto& bs = r.blocks[cur.pos];
        const Block& b = bs[cur.index];
        const std::size_t m = exit_rank(bs, cur.index);
        const std::size_t next = b.exit == Dir::Right ? cur.pos + 1 : cur.pos - 1;
        // a right exit enters the next tile from the left, and vice versa
        const auto target = nth_entry(r.blocks[next], b.exit, m);
        if (!target) break;
        cur = {next, *target};
    }
    if (r.order.size() != total) {
        r.order.clear();
        r.reason = "block graph is not a single path";
    }
    return r;
}

} // namespace

TilingCheck tiling_validate(const Tiling& t) {
    const PathResult p = block_path(t);
    if (p.order.empty()) return {false, std::nullopt, p.reason};
    return {true, p.order.back().pos, ""};
}

std::vector<LabelledSplit> tiling_to_labelled_splits(const Tiling& t) {
    const PathResult p = block_path(t);
    if (p.order.empty()) throw Error("InvalidTiling", p.reason);
    std::vector<LabelledSplit> out;
    for (const BlockRef& ref : p.order) {
        const Block& b = p.blocks[ref.pos][ref.index];
        for (std::size_t h = b.first; h <= b.last; ++h) out.push_back({{ref.pos, b.exit}, t[ref.pos][h].label});
    }
    return out;
}

std::vector<Split> tiling_to_splits(const Tiling& t) {
    std::vector<Split> out;
    for (const auto& ls : tiling_to_labelled_splits(t)) out.push_back(ls.split);
    return out;
}

std::optional<std::string> split_sequence_problem(const std::vector<Split>& seq, std::size_t n,
                                                  std::size_t max_per_position) {
    if (seq.empty()) return "empty sequence";
    if (!(seq[0] == Split{0, Dir::Right})) return "first split is " + to_string(seq[0]) + ", not →0";
    std::vector<std::size_t> count(n + 2, 0);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const Split& s = seq[k];
        if (!is_split(s, n)) return to_string(s) + " is not a split of a word of length " + std::to_string(n);
        if (k > 0) {
            const Split& p = seq[k - 1];
            const auto suc = successor(p, n);
            if (!(s == p || s == opposite(p) || (suc && s == *suc)))
                return "step " + std::to_string(k) + ": " + to_string(s) + " does not follow " + to_string(p);
        }
        if (++count[s.pos] > max_per_position && max_per_position > 0)
            return "more than " + std::to_string(max_per_position) + " splits at position " + std::to_string(s.pos);
    }
    return std::nullopt;
}

Tiling splits_to_tiling(const std::vector<LabelledSplit>& seq, std::size_t n, std::size_t max_per_position) {
    std::vector<Split> plain;
    for (const auto& ls : seq) plain.push_back(ls.split);
    if (auto problem = split_sequence_problem(plain, n, max_per_position)) throw Error("NotWellFormed", *problem);
    Tiling t(n + 2);
    t[0].push_back({StepKind::Suc, seq[0].label});
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const Split& p = plain[k - 1];
        const Split& s = plain[k];
        const StepKind kind = s == p ? StepKind::Same : s == opposite(p) ? StepKind::Opp : StepKind::Suc;
        t[s.pos].push_back({kind, seq[k].label});
    }
    return t;
}

Tiling splits_to_tiling(const std::vector<Split>& seq, std::size_t n, std::size_t max_per_position) {
    std::vector<LabelledSplit> ls;
    for (const Split& s : seq) ls.push_back({s, std::nullopt});
    return splits_to_tiling(ls, n, max_per_position);
}

Tiling sample_tiling() {
    const Step suc{StepKind::Suc, {}}, opp{StepKind::Opp, {}}, same{StepKind::Same, {}};
    return {{suc, opp}, {opp, same, same, suc}, {suc, same, suc}, {opp}};
}

} // namespace expreg
