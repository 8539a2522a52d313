#include "doctest.h"

#include "expreg/error.hpp"
#include "expreg/model_io.hpp"
#include "support.hpp"

using namespace expreg;

namespace {

Model reload(const Model& m) { return model_from_json(Json::parse(model_to_json(m).dump())); }

bool same_behaviour(const Model& a, const Model& b, const char* sigma, std::size_t max_len) {
    const auto r = difftest(a, b, Alphabet::of(sigma), max_len);
    if (!r.ok) MESSAGE("differs on " << to_string(r.counterexample) << ": " << r.left << " vs " << r.right);
    return r.ok;
}

std::string error_name(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.name();
    } catch (const UsageError&) {
        return "usage";
    }
    return "";
}

} // namespace

TEST_CASE("formula json round trip") {
    testing::FormulaGen gen(7);
    for (int i = 0; i < 200; ++i) {
        const auto f = gen.sentence(2, 4);
        CHECK(formula_from_json(formula_to_json(f)) == f);
    }
    const auto sugar = mso::Formula::forall_mon(
        "Y", {"a", "b"},
        mso::Formula::land({mso::Formula::succ("x", "y"), mso::Formula::first("x"), mso::Formula::last("y"),
                            mso::Formula::iff(mso::Formula::top(), mso::Formula::bottom()),
                            mso::Formula::implies(mso::Formula::equal("x", "y"), mso::Formula::mon_eq("Y", "x", "b"))}));
    CHECK(formula_from_json(formula_to_json(sugar)) == sugar);
    CHECK(formula_to_json(mso::Formula::exists_mon("X", {"g"}, mso::Formula::top()))["op"] == "existsMon");
}

TEST_CASE("built-in models survive a round trip") {
    for (const auto& name : builtin_interpretation_names()) {
        const Model m = builtin_interpretation(name);
        const char* sigma = name == "distribute" ? "ab#" : "ab";
        CHECK(same_behaviour(m, reload(m), sigma, 4));
    }
    const Model marked = to_marked(builtin_interpretation("distribute"));
    CHECK(same_behaviour(marked, reload(marked), "ab#", 4));
    for (const auto& name : builtin_yh_names()) {
        const Model m = builtin_yh(name);
        CHECK(same_behaviour(m, reload(m), name == "distribute" ? "ab#" : "abc", 4));
    }
    for (const auto& name : builtin_ariadne_names()) {
        const Model m = builtin_ariadne(name);
        const Model r = reload(m);
        CHECK(model_kind(r) == model_kind(m));
        CHECK(same_behaviour(m, r, "abc", 4));
    }
}

TEST_CASE("generator documents") {
    const Json yh = model_to_json(builtin_yh("rev_prefix"));
    const Json doc = translated_document(yh, "ariadne");
    CHECK(doc["generator"] == "lemma6.1");
    CHECK(same_behaviour(builtin_yh("rev_prefix"), model_from_json(doc), "ab", 5));

    const Json acceptor = model_to_json(builtin_ariadne("subwords_acceptor"));
    CHECK(acceptor["kind"] == "ariadne-automaton");
    const Model ah = model_from_json(translated_document(acceptor, "althennie"));
    CHECK(model_kind(ah) == "althennie");
    CHECK(same_behaviour(builtin_ariadne("subwords_acceptor"), ah, "ab", 3));

    const Model stacks = model_from_json(translated_document(model_to_json(builtin_ariadne("subwords")), "setinterp"));
    CHECK(same_behaviour(builtin_ariadne("subwords"), stacks, "ab", 3));

    CHECK(error_name([&] { translated_document(acceptor, "yhennie"); }) == "usage");
    CHECK(error_name([&] { model_to_json(ah); }) == "NotSerializable");
    CHECK(error_name([&] { model_to_json(stacks); }) == "NotSerializable");
}

TEST_CASE("malformed documents") {
    CHECK(error_name([] { model_from_json(Json::parse(R"({"kind":"nope"})")); }) == "usage");
    CHECK(error_name([] { model_from_json(Json::parse(R"({"kind":"yhennie"})")); }) == "usage");
    CHECK(error_name([] { formula_from_json(Json::parse(R"({"op":"less","x":1})")); }) == "usage");
    CHECK(error_name([] { model_from_json(Json::parse(R"({"kind":"setinterp","generator":"x","source":{"kind":"yhennie"}})")); }) ==
          "usage");
}

TEST_CASE("fixture documents load") {
    const auto docs = fixture_documents();
    CHECK(docs.size() >= 10);
    for (const auto& [file, doc] : docs) {
        INFO(file);
        CHECK_NOTHROW(model_from_json(doc));
    }
}
