#include "doctest.h"

#include <functional>

#include "expreg/error.hpp"
#include "expreg/structure.hpp"
#include "oracles.hpp"

using namespace expreg;

namespace {

Split R(std::size_t i) { return {i, Dir::Right}; }
Split L(std::size_t i) { return {i, Dir::Left}; }

std::string error_name(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

Tile tile(std::initializer_list<const char*> steps) {
    Tile t;
    for (const char* s : steps) t.push_back(parse_step(s));
    return t;
}

// every well-formed sequence of length <= max_len over a word of length n
void well_formed(std::size_t n, std::size_t max_len, const std::function<void(const std::vector<Split>&)>& f) {
    std::vector<Split> seq = {R(0)};
    std::function<void()> go = [&] {
        f(seq);
        if (seq.size() == max_len) return;
        const Split s = seq.back();
        std::vector<Split> next = {s, opposite(s)};
        if (auto suc = successor(s, n)) next.push_back(*suc);
        for (const Split& t : next) {
            if (!is_split(t, n)) continue;
            seq.push_back(t);
            go();
            seq.pop_back();
        }
    };
    go();
}

} // namespace

TEST_CASE("splits") {
    CHECK(all_splits(2).size() == 6);
    CHECK(opposite(R(0)) == L(1));
    CHECK(opposite(L(1)) == R(0));
    CHECK_FALSE(successor(L(1), 3));
    CHECK_FALSE(successor(R(3), 3));
    CHECK(*successor(R(1), 3) == R(2));
    CHECK(*successor(L(3), 3) == L(2));
    CHECK_FALSE(is_split(L(0), 3));
    CHECK_FALSE(is_split(R(4), 3));
    CHECK(parse_split("←4") == L(4));
    CHECK(parse_split("->2") == R(2));
    CHECK(to_string(L(3)) == "←3");

    const Colouring a = {0, 1, 2, 0}, b = {0, 1, 1, 0};
    CHECK(s_equivalent(a, a, L(2)));
    CHECK(s_equivalent(a, b, R(1)));
    CHECK_FALSE(s_equivalent(a, b, L(2)));
}

TEST_CASE("simplicity basics") {
    // configurations differ only at position 1 of a one-letter word
    SimplicityContext ctx({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}, 1, Checker::Both);
    CHECK(ctx.simplicity({1, 1}, R(1)) == -1);
    CHECK(ctx.simplicity({0, 2}, R(0)) == 0);
    CHECK(ctx.simplicity({0, 2}, L(2)) == 0);
    CHECK(ctx.simplicity({0, 0}, R(1)) == -1);
    CHECK(ctx.simplicity({0, 2}, R(1)) == 1);

    SimplicityContext one({{0, 0}}, 0);
    CHECK(simplicity_table(one).max == -1);
}

TEST_CASE("rev_prefix simplicity on seven letters") {
    const auto phi = builtin_interpretation("rev_prefix");
    for (const char* w : {"abaabba", "aaaaaaa"}) {
        auto ctx = SimplicityContext::of(phi, parse_word(w));
        CHECK(ctx.size() == 21);
        CHECK(ctx.simplicity(ctx.full(), L(4)) == 2);
        CHECK(ctx.simplicity(ctx.full(), R(3)) <= 3);
        CHECK(ctx.is_d_simple(ctx.full(), R(0), 0));
        CHECK(ctx.is_d_simple(ctx.full(), L(8), 0));
    }
}

TEST_CASE("rev_prefix simplicity bound and checker agreement") {
    const auto phi = builtin_interpretation("rev_prefix");
    for (const auto& w : testing::all_strings("ab", 5)) {
        const Checker c = w.size() <= 4 ? Checker::Both : Checker::Gap;
        auto ctx = SimplicityContext::of(phi, parse_word(w), c);
        const auto t = simplicity_table(ctx, true);
        CHECK(t.max <= 3);
        if (w.size() != 4) continue;
        // monotonicity spot checks
        for (const auto& cell : t.cells) {
            CHECK(ctx.is_d_simple(cell.interval, cell.split, cell.simplicity + 1));
            if (cell.interval.size() > 1) {
                CHECK(ctx.simplicity({cell.interval.lo + 1, cell.interval.hi}, cell.split) <= cell.simplicity);
                CHECK(ctx.simplicity({cell.interval.lo, cell.interval.hi - 1}, cell.split) <= cell.simplicity);
            }
        }
    }
}

TEST_CASE("subwords simplicity is constant across lengths") {
    const auto phi = builtin_interpretation("subwords");
    std::vector<int> maxima;
    for (std::size_t n = 2; n <= 5; ++n) maxima.push_back(simplicity_table(phi, parse_word(std::string(n, 'a'))).max);
    CHECK(maxima == std::vector<int>{1, 3, 4, 4});
    CHECK(simplicity_table(phi, parse_word("abab")).max == 4);
}

TEST_CASE("blocks") {
    auto b = block_decompose(tile({"opp", "same", "same"}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].entry == Dir::Right);
    CHECK(b[0].exit == Dir::Left);
    CHECK(b[0].last == 2);

    b = block_decompose(tile({"suc", "opp"}));
    REQUIRE(b.size() == 2);
    CHECK((b[0].kind == StepKind::Suc && b[0].entry == Dir::Right && b[0].exit == Dir::Right));
    CHECK((b[1].kind == StepKind::Opp && b[1].entry == Dir::Left && b[1].exit == Dir::Right));
    CHECK(block_decompose({}).empty());
    CHECK(error_name([] { block_decompose(tile({"same", "suc"})); }) == "MalformedTile");
}

TEST_CASE("sample tiling") {
    const Tiling t = sample_tiling();
    const auto check = tiling_validate(t);
    CHECK(check.valid);
    CHECK(check.live_position == 2);
    const std::vector<Split> expected = {R(0), L(1), L(1), L(1), R(0), R(1), R(2), R(2), L(3), L(2)};
    CHECK(tiling_to_splits(t) == expected);
    CHECK(splits_to_tiling(expected, 2) == t);

    CHECK_FALSE(tiling_validate(Tiling(4)).valid);
    CHECK(error_name([] { tiling_to_splits(Tiling(4)); }) == "InvalidTiling");
    Tiling root(4);
    root[0] = tile({"suc"});
    CHECK(tiling_validate(root).live_position == 0);
    CHECK(tiling_to_splits(root) == std::vector<Split>{R(0)});
    CHECK(splits_to_tiling(std::vector<Split>{R(0)}, 2) == root);

    CHECK(error_name([&] { splits_to_tiling(expected, 2, 3); }) == "NotWellFormed");
    CHECK(error_name([] { splits_to_tiling(std::vector<Split>{R(0), R(2)}, 2); }) == "NotWellFormed");
    CHECK(error_name([] { splits_to_tiling(std::vector<Split>{L(1)}, 2); }) == "NotWellFormed");

    // a tile with two blocks that lead nowhere
    Tiling broken(4);
    broken[0] = tile({"suc"});
    broken[2] = tile({"opp"});
    CHECK_FALSE(tiling_validate(broken).valid);
}

TEST_CASE("labelled tilings") {
    const std::vector<LabelledSplit> seq = {{R(0), 1}, {L(1), 2}, {L(1), 1}, {R(0), 3}};
    const Tiling t = splits_to_tiling(seq, 1);
    CHECK(to_string(t[1][1]) == "same:1");
    CHECK(tiling_to_labelled_splits(t) == seq);
}

TEST_CASE("tiling round trips") {
    std::size_t sequences = 0;
    for (std::size_t n = 0; n <= 3; ++n) {
        well_formed(n, 6, [&](const std::vector<Split>& seq) {
            ++sequences;
            const Tiling t = splits_to_tiling(seq, n);
            CHECK(tiling_validate(t).valid);
            CHECK(tiling_to_splits(t) == seq);
        });
    }
    CHECK(sequences > 100);

    // every tiling with at most five steps over |w| <= 2: valid ones re-encode to themselves
    const Step all[] = {parse_step("same"), parse_step("opp"), parse_step("suc")};
    std::size_t valid = 0;
    for (std::size_t n = 0; n <= 2; ++n) {
        Tiling t(n + 2);
        // extend the current tile then move on; each tile content is visited once
        std::function<void(std::size_t, std::size_t)> tiles = [&](std::size_t pos, std::size_t budget) {
            if (pos == t.size()) {
                if (!tiling_validate(t).valid) return;
                ++valid;
                CHECK(splits_to_tiling(tiling_to_splits(t), n) == t);
                return;
            }
            std::function<void(std::size_t)> extend = [&](std::size_t left) {
                tiles(pos + 1, left);
                if (left == 0) return;
                for (const Step& s : all) {
                    t[pos].push_back(s);
                    extend(left - 1);
                    t[pos].pop_back();
                }
            };
            extend(budget);
        };
        tiles(0, 5);
    }
    CHECK(valid > 20);
}

TEST_CASE("funnels") {
    const auto phi = builtin_interpretation("rev_prefix");
    auto ctx = SimplicityContext::of(phi, parse_word("abab"));
    const BasisMember any = [](const Interval&, const Split&) { return true; };

    FunnelCandidate root{{{ctx.full(), R(0)}}};
    CHECK(validate_funnel(root, any, ctx).valid);

    FunnelCandidate disjoint{{{ctx.full(), R(0)}, {{0, 1}, R(0)}, {{3, 4}, L(1)}}};
    CHECK(validate_funnel(disjoint, any, ctx).item == 3);

    FunnelCandidate bad_start{{{ctx.full(), R(1)}}};
    CHECK(validate_funnel(bad_start, any, ctx).item == 2);
    FunnelCandidate partial{{{{0, 2}, R(0)}}};
    CHECK(validate_funnel(partial, any, ctx).item == 1);

    const BasisMember none = [](const Interval& I, const Split&) { return I.size() > 3; };
    FunnelCandidate small{{{ctx.full(), R(0)}, {{0, 1}, L(1)}}};
    CHECK(validate_funnel(small, none, ctx).item == 4);

    FunnelCandidate jump{{{ctx.full(), R(0)}, {ctx.full(), R(2)}}};
    CHECK(validate_funnel(jump, any, ctx).item == 5);

    // revisiting →1 with the same interval does not decrease simplicity
    FunnelCandidate repeat{{{ctx.full(), R(0)}, {ctx.full(), R(1)}, {ctx.full(), R(1)}}};
    const auto r = validate_funnel(repeat, any, ctx);
    CHECK(r.item == 6);
    CHECK(r.at == 2);
}
