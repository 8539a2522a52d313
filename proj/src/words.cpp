#include "expreg/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <json.hpp>

namespace expreg {

std::string_view move_name(Move m) {
    switch (m) {
    case Move::Left: return "left";
    case Move::Stay: return "stay";
    case Move::Right: return "right";
    }
    return "?";
}

std::optional<Move> parse_move(std::string_view s) {
    if (s == "left" || s == "<-" || s == "←") return Move::Left;
    if (s == "stay" || s == "o" || s == "↻") return Move::Stay;
    if (s == "right" || s == "->" || s == "→") return Move::Right;
    return std::nullopt;
}

int offset(Move m) { return m == Move::Left ? -1 : m == Move::Right ? 1 : 0; }

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("InvalidAlphabet", "alphabet must be non-empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (is_marker(symbols_[i]))
            throw Error("InvalidAlphabet", "end markers cannot be alphabet letters");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[i] == symbols_[j])
                throw Error("InvalidAlphabet", "duplicate letter " + symbols_[i].name());
    }
}

Alphabet Alphabet::of(std::string_view letters) { return Alphabet(parse_word(letters)); }

bool Alphabet::contains(Symbol s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

MarkedWord::MarkedWord(const Word& base) {
    letters_.reserve(base.size() + 2);
    letters_.push_back(begin_marker());
    for (Symbol s : base) {
        if (is_marker(s)) throw Error("MarkerViolation", "marker inside a word");
        letters_.push_back(s);
    }
    letters_.push_back(end_marker());
}

PointedTape apply_move(const PointedTape& tape, Symbol write, Move dir) {
    const Symbol old = tape.read();
    if (is_marker(old) != is_marker(write) || (is_marker(old) && old != write))
        throw Error("MarkerOverwrite",
                    "cannot write " + write.name() + " over " + old.name());
    const long next = static_cast<long>(tape.pointer) + offset(dir);
    if (next < 0 || next >= static_cast<long>(tape.cells.size()))
        throw Error("OutOfBounds", "pointer leaves the tape at " + std::to_string(next));
    PointedTape out = tape;
    out.cells[tape.pointer] = write;
    out.pointer = static_cast<std::size_t>(next);
    return out;
}

Word parse_word(std::string_view utf8) {
    Word out;
    std::size_t i = 0;
    while (i < utf8.size()) {
        const auto lead = static_cast<unsigned char>(utf8[i]);
        std::size_t len = 1;
        if (lead >= 0xF0) len = 4;
        else if (lead >= 0xE0) len = 3;
        else if (lead >= 0xC0) len = 2;
        len = std::min(len, utf8.size() - i);
        out.emplace_back(utf8.substr(i, len));
        i += len;
    }
    return out;
}

Word parse_word_arg(std::string_view text) {
    if (!text.empty() && text.front() == '[') {
        const auto j = nlohmann::json::parse(text);
        Word out;
        for (const auto& s : j) out.emplace_back(s.get<std::string>());
        return out;
    }
    return parse_word(text);
}

std::string to_string(const Word& w) {
    std::string out;
    for (Symbol s : w) out += s.name();
    return out;
}

std::vector<Word> words_upto(const Alphabet& sigma, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol s : sigma.symbols()) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

Caps Caps::defaults() {
    Caps caps;
    if (const char* env = std::getenv("EXPREG_CAP_SCALE")) {
        const double scale = std::atof(env);
        if (scale > 0) {
            auto scaled = [scale](std::uint64_t v) {
                return static_cast<std::uint64_t>(std::llround(static_cast<double>(v) * scale));
            };
            caps.max_colourings = scaled(caps.max_colourings);
            caps.max_nodes = scaled(caps.max_nodes);
            caps.max_steps = scaled(caps.max_steps);
            caps.max_words = scaled(caps.max_words);
        }
    }
    return caps;
}

} // namespace expreg
