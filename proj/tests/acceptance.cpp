// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ariadne_fixtures.hpp"
#include "expreg/error.hpp"
#include "expreg/structure.hpp"
#include "expreg/xlate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace expreg;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

std::string ab_or_hash(const std::string& name) { return name.rfind("distribute", 0) == 0 ? "a#b" : "ab"; }

std::string out(const Word& w) { return to_string(w); }

void distribute(Outcome& o) {
    const Word w = parse_word("ab#cd");
    o.require(out(evaluate_interp(builtin_interpretation("distribute"), w)) == "ac#ad#bc#bd", "interpretation");
    o.require(out(evaluate_yh(builtin_yh("distribute"), w)) == "ac#ad#bc#bd", "machine");
}

void rev_prefix(Outcome& o) {
    const auto phi = builtin_interpretation("rev_prefix");
    const auto m = builtin_yh("rev_prefix");
    const auto a = yh_to_ariadne(m);
    const Word w = parse_word("aabb");
    o.require(out(evaluate_interp(phi, w)) == "aaabaa", "interpretation on aabb");
    o.require(out(evaluate_yh(m, w)) == "aaabaa", "machine on aabb");
    o.require(out(evaluate_ariadne(a, w)) == "aaabaa", "translated transducer on aabb");
    for (const auto& s : testing::all_strings("ab", 6)) {
        const Word word = parse_word(s);
        const std::string ref = testing::rev_prefix_reference(s);
        o.require(out(evaluate_interp(phi, word)) == ref, "interpretation on " + s);
        o.require(out(evaluate_yh(m, word)) == ref, "machine on " + s);
        o.require(out(evaluate_ariadne(a, word)) == ref, "translated transducer on " + s);
    }
}

std::vector<std::string> sorted_groups(const std::map<std::vector<std::size_t>, std::string>& groups) {
    std::vector<std::string> got;
    for (const auto& [k, g] : groups) got.push_back(g);
    std::sort(got.begin(), got.end());
    return got;
}

// letters grouped by the non-background positions of the configuration
std::vector<std::string> interp_groups(const SetInterpretation& phi, const Word& w) {
    std::map<std::vector<std::size_t>, std::string> groups;
    for (const auto& c : configurations(phi, w)) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < c.colouring.size(); ++i)
            if (c.colouring[i] != 0) support.push_back(i);
        groups[support] += c.letter.name();
    }
    return sorted_groups(groups);
}

// letters grouped by the selected cells (σ_r, σ_b) of the tape they were emitted from
std::vector<std::string> machine_groups(const YieldHennieMachine& m, const Word& w) {
    const RunTree t = run_tree(m, w);
    std::map<std::vector<std::size_t>, std::string> groups;
    std::function<void(std::size_t, const PointedTape*)> walk = [&](std::size_t id, const PointedTape* tape) {
        const RunNode& n = t.nodes[id];
        if (n.kind == RunNode::Kind::Letter) {
            std::vector<std::size_t> support;
            for (std::size_t i = 0; i < tape->cells.size(); ++i) {
                const std::string& c = tape->cells[i].name();
                if (c.size() > 2 && c.substr(c.size() - 2) != "_g") support.push_back(i);
            }
            groups[support] += n.letter.name();
        }
        for (std::size_t child : n.children) walk(child, n.kind == RunNode::Kind::Internal ? &n.tape : tape);
    };
    walk(0, nullptr);
    return sorted_groups(groups);
}

void subwords(Outcome& o) {
    const auto phi = builtin_interpretation("subwords");
    const auto m = builtin_yh("subwords");
    const auto a = builtin_ariadne("subwords");
    for (const auto& s : testing::all_strings("ab", 5)) {
        const Word w = parse_word(s);
        const auto ref = testing::subwords_reference(s);
        o.require(interp_groups(phi, w) == ref, "interpretation on " + s);
        o.require(machine_groups(m, w) == ref, "machine on " + s);
        auto counter = testing::decompose_by_counter(run_ariadne(a, w));
        std::sort(counter.begin(), counter.end());
        o.require(counter == ref, "transducer on " + s);
        o.require(evaluate_interp(phi, w) == evaluate_yh(m, w), "interpretation and machine differ on " + s);
    }
}

void yh_translation(Outcome& o) {
    for (const auto& name : builtin_yh_names()) {
        const auto m = builtin_yh(name);
        const auto a = yh_to_ariadne(m);
        for (const auto& s : testing::all_strings(ab_or_hash(name), 6))
            o.require(evaluate_ariadne(a, parse_word(s)) == evaluate_yh(m, parse_word(s)), name + " on " + s);
    }
}

std::vector<AriadneTransducer> fixture_automata() {
    return {builtin_ariadne("subwords_acceptor"), build_subset_enumerator(testing::dfa_some_a_marked()),
            build_subset_enumerator(testing::dfa_all_ones_in_a_star()), testing::empty_language(),
            testing::all_accepting()};
}

void althennie_languages(Outcome& o) {
    for (const auto& a : fixture_automata())
        o.require(language_upto(ariadne_to_althennie(a), 4) == language_upto(a, 4), a.name);
}

void simplicity(Outcome& o) {
    const auto phi = builtin_interpretation("rev_prefix");
    auto seven = SimplicityContext::of(phi, parse_word("abaabba"));
    o.require(seven.simplicity(seven.full(), {4, Dir::Left}) == 2, "simplicity at ←4 is not 2");
    o.require(seven.simplicity(seven.full(), {3, Dir::Right}) <= 3, "simplicity at →3 exceeds 3");
    for (const auto& s : testing::all_strings("ab", 5)) {
        const Checker c = s.size() <= 4 ? Checker::Both : Checker::Gap;
        auto ctx = SimplicityContext::of(phi, parse_word(s), c);
        o.require(simplicity_table(ctx).max <= 3, "max simplicity exceeds 3 on " + s);
    }
}

void tiling(Outcome& o) {
    const Tiling t = sample_tiling();
    const auto check = tiling_validate(t);
    o.require(check.valid, "sample tiling is invalid");
    o.require(check.live_position == 2, "live position is not 2");
    const std::vector<Split> expected = {{0, Dir::Right}, {1, Dir::Left},  {1, Dir::Left},  {1, Dir::Left},
                                         {0, Dir::Right}, {1, Dir::Right}, {2, Dir::Right}, {2, Dir::Right},
                                         {3, Dir::Left},  {2, Dir::Left}};
    o.require(tiling_to_splits(t) == expected, "decoded sequence");
    o.require(splits_to_tiling(expected, 2) == t, "encoded tiling");
    for (std::size_t n = 0; n <= 3; ++n) {
        std::vector<Split> seq = {{0, Dir::Right}};
        std::function<void()> go = [&] {
            const Tiling enc = splits_to_tiling(seq, n);
            o.require(tiling_to_splits(enc) == seq, "decode(encode) on a sequence of length " + std::to_string(seq.size()));
            o.require(splits_to_tiling(tiling_to_splits(enc), n) == enc, "encode(decode)");
            if (seq.size() == 6) return;
            const Split s = seq.back();
            std::vector<Split> next = {s, opposite(s)};
            if (auto suc = successor(s, n)) next.push_back(*suc);
            for (const Split& x : next) {
                if (!is_split(x, n)) continue;
                seq.push_back(x);
                go();
                seq.pop_back();
            }
        };
        go();
    }
}

std::vector<AriadneTransducer> fixture_runs() {
    std::vector<AriadneTransducer> out = {builtin_ariadne("subwords")};
    for (auto& a : fixture_automata()) out.push_back(std::move(a));
    for (const auto& name : builtin_yh_names()) out.push_back(yh_to_ariadne(builtin_yh(name)));
    return out;
}

void ariadne_invariants(Outcome& o) {
    for (const auto& a : fixture_runs()) {
        for (const auto& s : testing::all_strings(ab_or_hash(a.name), 5)) {
            const AriadneRun run = run_ariadne(a, parse_word(s));
            const std::string where = a.name + " on " + s;
            std::set<Stack> seen;
            for (std::size_t i = 0; i < run.stacks.size(); ++i) {
                const Stack& st = run.stacks[i];
                o.require(seen.insert(st).second, "repeated stack, " + where);
                if (i > 0) {
                    const Stack& prev = run.stacks[i - 1];
                    o.require(stack_less(a, prev, st), "no strict increase, " + where);
                    const long d = static_cast<long>(st.back().pos) - static_cast<long>(prev.back().pos);
                    o.require(d >= -1 && d <= 1, "head jumps, " + where);
                }
                for (std::size_t j = 1; j < st.size(); ++j) {
                    const long d = static_cast<long>(st[j].pos) - static_cast<long>(st[j - 1].pos);
                    o.require(d >= -1 && d <= 1, "stack positions jump, " + where);
                }
            }
            o.require(run.length < safety_cap(a, s.size()), "run too long, " + where);
        }
    }
}

void stack_round_trip(Outcome& o) {
    std::vector<AriadneTransducer> ts = {builtin_ariadne("subwords")};
    for (const auto& name : builtin_yh_names()) ts.push_back(yh_to_ariadne(builtin_yh(name)));
    for (const auto& a : ts) {
        const auto phi = ariadne_to_setinterp(a);
        for (const auto& s : testing::all_strings(ab_or_hash(a.name), 4)) {
            const Word w = parse_word(s);
            const std::string where = a.name + " on " + s;
            const AriadneRun run = run_ariadne(a, w);
            for (const auto& st : run.stacks) {
                const auto enc = canonical_encoding(st, w.size() + 2);
                bool admissible = true;
                for (const auto& seq : enc)
                    admissible = admissible && seq.size() <= a.bound && decode_locations(a, encode_locations(a, seq)) == seq;
                o.require(admissible, "inadmissible encoding, " + where);
                o.require(induced_stack(enc) == st, "induced stack differs, " + where);
            }
            o.require(evaluate_interp(phi, w, CheckMode::Check) == run.output, "realization output, " + where);
        }
    }
}

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

void mso_layer(Outcome& o) {
    testing::FormulaGen gen(11);
    for (int round = 0; round < 24; ++round) {
        const std::size_t k = 1 + static_cast<std::size_t>(round % 4);
        const mso::Formula f = gen.sentence(k, 3);
        mso::Env sig;
        sig.mon["X"] = {testing::colour_names(k), {}};
        const mso::Formula g = mso::encode_monadic_to_binary(f, sig);
        for (const auto& w : words_upto(Alphabet::of("ab"), 4)) {
            for (const auto& c : all_colourings(w.size(), k)) {
                mso::Env env;
                env.mon["X"] = {testing::colour_names(k), c};
                o.require(mso::evaluate(f, w, env) == mso::evaluate(g, w, mso::encode_env_binary(env)),
                          "binary encoding changes satisfaction, formula " + std::to_string(round));
            }
        }
    }

    for (const auto& name : builtin_interpretation_names()) {
        const auto phi = builtin_interpretation(name);
        const auto marked = to_marked(phi);
        for (const auto& s : testing::all_strings(ab_or_hash(name), 5))
            o.require(evaluate_interp(marked, parse_word(s)) == evaluate_interp(phi, parse_word(s)),
                      "marked wrapper differs, " + name + " on " + s);
    }

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
    o.require(counterexamples == 0, std::to_string(counterexamples) + " compositionality counterexamples");
}

void visit_bounds(Outcome& o) {
    const auto declared = builtin_yh("rev_prefix");
    unsigned observed = 0;
    for (const auto& s : testing::all_strings("ab", 6)) {
        const RunTree t = run_tree(declared, parse_word(s));
        observed = std::max(observed, static_cast<unsigned>(max_visits(t)));
        o.require(max_visits(t) <= declared.visit_bound, "declared bound exceeded on " + s);
    }
    o.require(observed > 1, "no revisits observed");
    // every bound below the observed maximum must be rejected
    for (unsigned k = 1; k < observed; ++k) {
        YieldHennieMachine m = declared;
        m.visit_bound = k;
        bool raised = false;
        for (const auto& s : testing::all_strings("ab", 6)) {
            try {
                run_tree(m, parse_word(s));
            } catch (const Error& e) {
                raised = raised || e.name() == "VisitBoundExceeded";
            }
        }
        o.require(raised, "bound " + std::to_string(k) + " not enforced");
    }
    YieldHennieMachine one = declared;
    one.visit_bound = 1;
    bool raised = false;
    try {
        run_tree(one, parse_word("ab"));
    } catch (const Error& e) {
        raised = e.name() == "VisitBoundExceeded";
    }
    o.require(raised, "bound 1 on ab not enforced");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"distribute on ab#cd", distribute},
        {"rev-prefix built-ins and oracle", rev_prefix},
        {"subwords decompositions", subwords},
        {"yield-Hennie to Ariadne translation", yh_translation},
        {"Ariadne to alternating Hennie languages", althennie_languages},
        {"simplicity bounds", simplicity},
        {"tiling fidelity and round trips", tiling},
        {"Ariadne run invariants", ariadne_invariants},
        {"stack encodings and realization", stack_round_trip},
        {"MSO encoding, wrapper, compositionality", mso_layer},
        {"visit bound enforcement", visit_bounds},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first;
        if (!o.ok) std::cout << " -- " << o.why.str();
        std::cout << " (" << std::fixed;
        std::cout.precision(1);
        std::cout << secs << "s)" << std::endl;
        failures += !o.ok;
    }
    return failures == 0 ? 0 : 1;
}
