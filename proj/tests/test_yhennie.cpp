#include "doctest.h"

#include "expreg/error.hpp"
#include "expreg/setinterp.hpp"
#include "expreg/yhennie.hpp"
#include "oracles.hpp"

using namespace expreg;

namespace {

std::string run(const YieldHennieMachine& m, const std::string& w) {
    return to_string(evaluate_yh(m, parse_word(w)));
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

TEST_CASE("reference values") {
    CHECK(run(builtin_yh("rev_prefix"), "aabb") == "aaabaa");
    CHECK(run(builtin_yh("rev_prefix"), "") == "");
    CHECK(run(builtin_yh("rev_prefix"), "a") == "");
    CHECK(run(builtin_yh("subwords"), "ab") == "baab");
    CHECK(run(builtin_yh("distribute"), "ab#cd") == "ac#ad#bc#bd");
    CHECK_THROWS_AS(builtin_yh("nope"), Error);
}

TEST_CASE("empty transition table") {
    YieldHennieMachine m = builtin_yh("rev_prefix");
    m.delta.clear();
    const RunTree t = run_tree(m, parse_word("ab"));
    CHECK(t.nodes.size() == 2);
    CHECK(t.nodes[1].kind == RunNode::Kind::Empty);
    CHECK(yield_of(t).empty());
}

TEST_CASE("yield traversal") {
    RunTree t;
    t.nodes.push_back({RunNode::Kind::Internal, Symbol("q"), {}, {}, {1, 2, 3}});
    t.nodes.push_back({RunNode::Kind::Letter, {}, {}, Symbol("a"), {}});
    t.nodes.push_back({RunNode::Kind::Empty, {}, {}, {}, {}});
    t.nodes.push_back({RunNode::Kind::Letter, {}, {}, Symbol("b"), {}});
    CHECK(to_string(yield_of(t)) == "ab");
}

TEST_CASE("visit bound enforcement") {
    YieldHennieMachine m = builtin_yh("rev_prefix");
    m.visit_bound = 1;
    CHECK(error_name([&] { run_tree(m, parse_word("ab")); }) == "VisitBoundExceeded");
    for (const auto& name : builtin_yh_names()) {
        const auto machine = builtin_yh(name);
        const std::string sigma = name == "distribute" ? "a#b" : "ab";
        for (const auto& w : testing::all_strings(sigma, 6)) {
            const RunTree t = run_tree(machine, parse_word(w));
            CHECK(max_visits(t) <= machine.visit_bound);
            CHECK(verify_run_tree(machine, parse_word(w), t) == "");
        }
    }
}

TEST_CASE("marker violations") {
    YieldHennieMachine m = builtin_yh("rev_prefix");
    m.delta[{Symbol("q0"), begin_marker()}] = {Spawn{Symbol("q0"), Symbol("a"), Move::Right}};
    CHECK(error_name([&] { run_tree(m, parse_word("a")); }) == "MarkerViolation");
    m.delta[{Symbol("q0"), begin_marker()}] = {Spawn{Symbol("q0"), begin_marker(), Move::Left}};
    CHECK(error_name([&] { run_tree(m, parse_word("a")); }) == "MarkerViolation");
}

TEST_CASE("node cap") {
    Caps caps;
    caps.max_nodes = 5;
    CHECK(error_name([&] { run_tree(builtin_yh("subwords"), parse_word("abab"), caps); }) == "CapExceeded");
}

TEST_CASE("agreement with set interpretations") {
    for (const auto& name : builtin_yh_names()) {
        const auto machine = builtin_yh(name);
        const auto phi = builtin_interpretation(name);
        const std::string sigma = name == "distribute" ? "a#b" : "ab";
        for (const auto& w : testing::all_strings(sigma, 6))
            CHECK_MESSAGE(run(machine, w) == to_string(evaluate_interp(phi, parse_word(w))), name << " " << w);
    }
    for (const auto& w : {"abc#de#f", "ab#cd#ef", "abc#def#abc"})
        CHECK(run(builtin_yh("distribute"), w) == testing::distribute_reference(w));
}
