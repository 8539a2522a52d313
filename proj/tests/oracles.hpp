#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "expreg/words.hpp"

namespace expreg::testing {

/// Strict prefixes, each reversed, concatenated in order of length.
inline std::string rev_prefix_reference(const std::string& w) {
    std::string out;
    for (std::size_t n = 1; n < w.size(); ++n) out.append(w.rbegin() + static_cast<long>(w.size() - n), w.rend());
    return out;
}

/// Nonempty subwords by index subset, sorted.
inline std::vector<std::string> subwords_reference(const std::string& w) {
    std::vector<std::string> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << w.size()); ++mask) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (mask >> i & 1U) s += w[i];
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Cartesian choice of one letter per '#'-separated block, joined by '#'.
inline std::string distribute_reference(const std::string& w) {
    std::vector<std::string> blocks(1);
    for (char c : w) {
        if (c == '#') blocks.emplace_back();
        else blocks.back() += c;
    }
    std::vector<std::string> acc = {""};
    for (const auto& b : blocks) {
        std::vector<std::string> next;
        for (const auto& p : acc)
            for (char c : b) next.push_back(p + c);
        acc = next;
    }
    std::string out;
    for (std::size_t i = 0; i < acc.size(); ++i) out += (i ? "#" : "") + acc[i];
    return out;
}

inline std::vector<std::string> all_strings(const std::string& sigma, std::size_t max_len) {
    std::vector<std::string> out = {""};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        for (char c : sigma) out.push_back(out[i] + c);
    }
    return out;
}

} // namespace expreg::testing
