#include "expreg/error.hpp"
#include "expreg/xlate.hpp"

namespace expreg {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

std::string verdict(bool b) { return b ? "accept" : "reject"; }

} // namespace

std::string model_kind(const Model& m) {
    return std::visit(Overload{
                          [](const SetInterpretation&) { return std::string("setinterp"); },
                          [](const YieldHennieMachine&) { return std::string("yhennie"); },
                          [](const AriadneTransducer& a) {
                              return std::string(a.accepting.empty() ? "ariadne" : "ariadne-automaton");
                          },
                          [](const AlternatingHennieAutomaton&) { return std::string("althennie"); },
                      },
                      m);
}

const Alphabet& model_input(const Model& m) {
    return std::visit([](const auto& x) -> const Alphabet& { return x.input; }, m);
}

std::string model_result(const Model& m, const Word& w, const Caps& caps) {
    return std::visit(Overload{
                          [&](const SetInterpretation& phi) {
                              return to_string(evaluate_interp(phi, w, CheckMode::Auto, caps));
                          },
                          [&](const YieldHennieMachine& y) { return to_string(evaluate_yh(y, w, caps)); },
                          [&](const AriadneTransducer& a) {
                              if (a.accepting.empty()) return to_string(evaluate_ariadne(a, w, caps));
                              return verdict(accepts(a, w, caps));
                          },
                          [&](const AlternatingHennieAutomaton& h) { return verdict(ah_accepts(h, w, {}, caps)); },
                      },
                      m);
}

DiffReport difftest(const Model& left, const Model& right, const Alphabet& sigma, std::size_t max_len,
                    const Caps& caps) {
    std::uint64_t total = 1, layer = 1;
    for (std::size_t i = 0; i < max_len; ++i) {
        layer *= sigma.size();
        total += layer;
        if (total > caps.max_words)
            throw Error("CapExceeded", "more than " + std::to_string(caps.max_words) + " words");
    }
    DiffReport report;
    for (const Word& w : words_upto(sigma, max_len)) {
        ++report.words;
        std::string l = model_result(left, w, caps);
        std::string r = model_result(right, w, caps);
        if (l != r) {
            report.ok = false;
            report.counterexample = w;
            report.left = std::move(l);
            report.right = std::move(r);
            return report;
        }
    }
    return report;
}

} // namespace expreg
