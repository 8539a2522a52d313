#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expreg/error.hpp"
#include "expreg/symbol.hpp"

namespace expreg {

using Word = std::vector<Symbol>;

enum class Move { Left, Stay, Right };

std::string_view move_name(Move m);           // "left" / "stay" / "right"
std::optional<Move> parse_move(std::string_view s);
int offset(Move m);                            // -1, 0, +1

/// Finite ordered set of symbols; the end markers are never members.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> symbols);
    /// One symbol per UTF-8 code point, e.g. Alphabet::of("ab#").
    static Alphabet of(std::string_view letters);

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool contains(Symbol s) const;
    bool empty() const noexcept { return symbols_.empty(); }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// ⊳w⊲ with positions 0..|w|+1.
class MarkedWord {
public:
    explicit MarkedWord(const Word& base);

    const Word& letters() const noexcept { return letters_; }
    Word base() const { return Word(letters_.begin() + 1, letters_.end() - 1); }
    std::size_t size() const noexcept { return letters_.size(); }
    Symbol operator[](std::size_t i) const { return letters_[i]; }

private:
    Word letters_;
};

struct PointedTape {
    std::vector<Symbol> cells;
    std::size_t pointer = 0;

    Symbol read() const { return cells[pointer]; }
    static PointedTape initial(const MarkedWord& w) { return {w.letters(), 0}; }

    friend bool operator==(const PointedTape&, const PointedTape&) = default;
};

/// Rewrites the pointed cell and shifts the pointer.
/// Throws OutOfBounds when the pointer would leave the tape and MarkerOverwrite
/// when a marker cell would receive a non-marker (or the reverse).
PointedTape apply_move(const PointedTape& tape, Symbol write, Move dir);

using Colour = std::uint64_t;

/// Total map from the positions of a word to colour indices.
using Colouring = std::vector<Colour>;

/// Splits a UTF-8 string into one symbol per code point.
Word parse_word(std::string_view utf8);
/// Parses either a plain UTF-8 word or, when it starts with '[', a JSON array
/// of symbol names.
Word parse_word_arg(std::string_view text);
std::string to_string(const Word& w);

/// All words over `sigma` of length <= max_len in length-lexicographic order.
std::vector<Word> words_upto(const Alphabet& sigma, std::size_t max_len);

/// Enumeration caps. EXPREG_CAP_SCALE multiplies every default.
struct Caps {
    std::uint64_t max_colourings = 2'000'000;
    std::uint64_t max_nodes = 2'000'000;
    std::uint64_t max_steps = 50'000'000;
    std::uint64_t max_words = 2'000'000;
    std::uint64_t check_below = 2000; // configurations: full order check below this

    static Caps defaults();
};

} // namespace expreg
