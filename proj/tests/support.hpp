#pragma once

#include <random>
#include <string>
#include <vector>

#include "expreg/mso.hpp"

namespace expreg::testing {

inline std::vector<std::string> colour_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("c" + std::to_string(i));
    return out;
}

/// Random formula with free monadic variable "X" (colours `free_colours`) and
/// no free FO variables. Bound monadic variables get 1..4 colours.
class FormulaGen {
public:
    explicit FormulaGen(unsigned seed) : rng_(seed) {}

    mso::Formula sentence(std::size_t free_colours, int depth) {
        fo_.clear();
        mon_.clear();
        mon_.push_back({"X", free_colours});
        fo_.push_back("x0");
        return mso::Formula::exists("x0", gen(depth));
    }

private:
    struct Mon {
        std::string name;
        std::size_t colours;
    };

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    mso::Formula atom() {
        using F = mso::Formula;
        const std::string& x = fo_[pick(fo_.size())];
        const std::string& y = fo_[pick(fo_.size())];
        switch (pick(4)) {
        case 0: return F::less(x, y);
        case 1: return F::letter(Symbol(pick(2) ? "a" : "b"), x);
        default: {
            const Mon& m = mon_[pick(mon_.size())];
            return F::mon_eq(m.name, x, "c" + std::to_string(pick(m.colours)));
        }
        }
    }

    mso::Formula gen(int depth) {
        using F = mso::Formula;
        if (depth <= 0) return atom();
        switch (pick(6)) {
        case 0: return F::lnot(gen(depth - 1));
        case 1: return F::lor(gen(depth - 1), gen(depth - 1));
        case 2: return F::land(gen(depth - 1), gen(depth - 1));
        case 3: {
            const std::string x = "x" + std::to_string(fo_.size());
            fo_.push_back(x);
            F body = gen(depth - 1);
            fo_.pop_back();
            return pick(2) ? F::exists(x, body) : F::forall(x, body);
        }
        case 4: {
            const std::string X = "Y" + std::to_string(mon_.size());
            const std::size_t k = 1 + pick(3);
            mon_.push_back({X, k});
            F body = gen(depth - 1);
            mon_.pop_back();
            return pick(2) ? F::exists_mon(X, colour_names(k), body) : F::forall_mon(X, colour_names(k), body);
        }
        default: return atom();
        }
    }

    std::mt19937 rng_;
    std::vector<std::string> fo_;
    std::vector<Mon> mon_;
};

} // namespace expreg::testing
