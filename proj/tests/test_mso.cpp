#include "doctest.h"

#include <map>

#include "expreg/error.hpp"
#include "expreg/mso.hpp"
#include "support.hpp"

using namespace expreg;
using mso::Formula;
using F = mso::Formula;

namespace {

std::vector<Colouring> all_colourings(std::size_t n, std::size_t k) {
    std::vector<Colouring> out;
    Colouring c(n, 0);
    while (true) {
        out.push_back(c);
        std::size_t i = 0;
        while (i < n && ++c[i] == k) c[i++] = 0;
        if (i == n) break;
    }
    return out;
}

std::string error_name(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

} // namespace

TEST_CASE("evaluate examples") {
    mso::Env env;
    env.fo["x"] = 0;
    CHECK(mso::evaluate(F::letter(Symbol("a"), "x"), parse_word("ab"), env));
    CHECK_FALSE(mso::evaluate(F::exists("x", F::letter(Symbol("a"), "x")), parse_word("bbb"), {}));
    const F constant = F::exists_mon("X", {"1", "2"}, F::forall("x", F::mon_eq("X", "x", "1")));
    CHECK(mso::evaluate(constant, parse_word("abba"), {}));
    CHECK(error_name([] { mso::evaluate(F::less("x", "y"), parse_word("a"), {}); }) == "UnboundVariable");
    CHECK(error_name([] {
              mso::evaluate(F::exists_mon("X", {"r"}, F::exists("x", F::mon_eq("X", "x", "q"))), parse_word("a"), {});
          }) == "ColourOutOfRange");
}

TEST_CASE("sugar agrees with desugared form") {
    const std::vector<F> fs = {
        F::exists("x", F::exists("y", F::succ("x", "y"))),
        F::forall("x", F::implies(F::first("x"), F::letter(Symbol("a"), "x"))),
        F::exists("x", F::land(F::last("x"), F::letter(Symbol("b"), "x"))),
        F::forall("x", F::exists("y", F::iff(F::equal("x", "y"), F::top()))),
        F::lor(F::bottom(), F::forall_mon("X", {"0", "1"}, F::exists("x", F::mon_eq("X", "x", "0")))),
    };
    for (const auto& w : words_upto(Alphabet::of("ab"), 4)) {
        for (const auto& f : fs) {
            const F d = mso::desugar(f);
            CHECK(mso::evaluate(f, w, {}) == mso::evaluate(d, w, {}));
        }
    }
}

TEST_CASE("quantifier rank") {
    CHECK(mso::quantifier_rank(F::less("x", "y")) == 0);
    CHECK(mso::quantifier_rank(F::exists("x", F::letter(Symbol("a"), "x"))) == 1);
    const F inner = F::exists("y", F::mon_eq("X", "y", "r"));
    CHECK(mso::quantifier_rank(F::exists_mon("X", {"r", "g", "b"}, inner)) == 4);
}

TEST_CASE("binary encoding shape") {
    const F f = F::exists_mon("X", {"a", "b", "c", "d"}, F::exists("x", F::mon_eq("X", "x", "c")));
    const F g = mso::encode_monadic_to_binary(f);
    CHECK(g.op() == mso::Op::ExistsMon);
    CHECK(g.node().var == "X#1");
    CHECK(g.args()[0].node().var == "X#2");
    const F two = F::exists_mon("X", {"a", "b"}, F::exists("x", F::mon_eq("X", "x", "b")));
    CHECK(mso::encode_monadic_to_binary(two) == two);
    CHECK(mso::encode_monadic_to_binary(F::exists_mon("X", {"a"}, F::top())).args()[0] == F::top());
}

TEST_CASE("binary encoding preserves satisfaction") {
    testing::FormulaGen gen(7);
    std::size_t checked = 0;
    for (int round = 0; round < 40; ++round) {
        const std::size_t k = 1 + static_cast<std::size_t>(round % 4);
        const F f = gen.sentence(k, 3);
        mso::Env sig;
        sig.mon["X"] = {testing::colour_names(k), {}};
        const F g = mso::encode_monadic_to_binary(f, sig);
        for (const auto& w : words_upto(Alphabet::of("ab"), 3)) {
            for (const auto& c : all_colourings(w.size(), k)) {
                mso::Env env;
                env.mon["X"] = {testing::colour_names(k), c};
                CHECK(mso::evaluate(f, w, env) == mso::evaluate(g, w, mso::encode_env_binary(env)));
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("relativization") {
    const std::map<std::string, std::pair<std::string, std::string>> none;
    CHECK(mso::relativize_to_markers(F::less("x", "y"), none) == F::less("x", "y"));
    const F f = F::exists("x", F::letter(Symbol("a"), "x"));
    const F g = mso::relativize_to_markers(f, none);
    for (const auto& w : words_upto(Alphabet::of("ab"), 4)) {
        const Word marked = MarkedWord(w).letters();
        CHECK(mso::evaluate(f, w, {}) == mso::evaluate(g, marked, {}));
        const F h = F::forall("x", F::letter(Symbol("a"), "x"));
        CHECK(mso::evaluate(h, w, {}) == mso::evaluate(mso::relativize_to_markers(h, none), marked, {}));
    }
    CHECK(error_name([] {
              mso::relativize_to_markers(F::exists("x", F::mon_eq("X", "x", "r")), {});
          }) == "MissingMarkerColour");
}

TEST_CASE("relativization on random formulas") {
    testing::FormulaGen gen(11);
    for (int round = 0; round < 20; ++round) {
        const F f = gen.sentence(2, 3);
        const std::map<std::string, std::pair<std::string, std::string>> mc{{"X", {"c0", "c1"}}};
        const F g = mso::relativize_to_markers(f, mc);
        for (const auto& w : words_upto(Alphabet::of("ab"), 3)) {
            for (const auto& c : all_colourings(w.size(), 2)) {
                mso::Env env;
                env.mon["X"] = {testing::colour_names(2), c};
                CHECK(mso::evaluate(f, w, env) ==
                      mso::evaluate(g, MarkedWord(w).letters(), mso::extend_env_to_markers(env, mc)));
            }
        }
    }
}

TEST_CASE("type examples") {
    CHECK(mso::type_q(parse_word("ab"), {}, 0) == mso::type_q(parse_word("bbb"), {}, 0));
    CHECK(mso::type_q(parse_word("a"), {}, 1) != mso::type_q(parse_word("b"), {}, 1));
    CHECK(mso::type_q(parse_word("aa"), {}, 1) == mso::type_q(parse_word("aaa"), {}, 1));
    CHECK(error_name([] { mso::type_q(parse_word("aaaaa"), {}, 1); }) == "CapExceeded");
    CHECK(error_name([] { mso::type_q(parse_word("a"), {}, 3); }) == "CapExceeded");
}

TEST_CASE("types decide random sentences") {
    testing::FormulaGen gen(5);
    std::vector<F> sentences;
    while (sentences.size() < 60) {
        const F f = gen.sentence(1, 3);
        if (mso::quantifier_rank(f) <= 2) sentences.push_back(f);
    }
    const auto ws = words_upto(Alphabet::of("ab"), 4);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
            if (mso::type_q(ws[i], {}, 2) != mso::type_q(ws[j], {}, 2)) continue;
            for (const auto& f : sentences) {
                mso::Env ei, ej;
                ei.mon["X"] = {{"c0"}, Colouring(ws[i].size(), 0)};
                ej.mon["X"] = {{"c0"}, Colouring(ws[j].size(), 0)};
                CHECK(mso::evaluate(f, ws[i], ei) == mso::evaluate(f, ws[j], ej));
            }
        }
    }
}

TEST_CASE("compositionality of types") {
    const mso::TypeCaps caps{2, 6};
    const auto ws = words_upto(Alphabet::of("ab"), 3);
    std::size_t counterexamples = 0;
    for (unsigned q = 0; q <= 2; ++q) {
        std::vector<mso::RankQType> types;
        for (const auto& u : ws) types.push_back(mso::type_q(u, {}, q, caps));
        for (std::size_t i = 0; i < ws.size(); ++i) {
            for (std::size_t j = i + 1; j < ws.size(); ++j) {
                if (types[i] != types[j]) continue;
                for (const auto& v : ws) {
                    Word uv = ws[i], u2v = ws[j], vu = v, vu2 = v;
                    uv.insert(uv.end(), v.begin(), v.end());
                    u2v.insert(u2v.end(), v.begin(), v.end());
                    vu.insert(vu.end(), ws[i].begin(), ws[i].end());
                    vu2.insert(vu2.end(), ws[j].begin(), ws[j].end());
                    if (mso::type_q(uv, {}, q, caps) != mso::type_q(u2v, {}, q, caps)) ++counterexamples;
                    if (mso::type_q(vu, {}, q, caps) != mso::type_q(vu2, {}, q, caps)) ++counterexamples;
                }
            }
        }
    }
    CHECK(counterexamples == 0);
}
