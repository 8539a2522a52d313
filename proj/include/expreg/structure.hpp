#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expreg/setinterp.hpp"

namespace expreg {

// ---------------------------------------------------------------------------
// Splits

enum class Dir { Left, Right };

/// →i = {0..i}, ←i = {i..|w|+1} over the positions of ⊳w⊲.
struct Split {
    std::size_t pos = 0;
    Dir dir = Dir::Right;
    friend bool operator==(const Split&, const Split&) = default;
    friend auto operator<=>(const Split&, const Split&) = default;
};

bool is_split(const Split& s, std::size_t n); // n = |w|
bool contains(const Split& s, std::size_t position);
Split opposite(const Split& s);
std::optional<Split> successor(const Split& s, std::size_t n);
/// →0..→n then ←1..←(n+1).
std::vector<Split> all_splits(std::size_t n);
std::string to_string(const Split& s);
/// Accepts "→3", "->3", "R3" and the left counterparts. Throws UsageError.
Split parse_split(std::string_view text);

bool s_equivalent(const Colouring& a, const Colouring& b, const Split& s);

// ---------------------------------------------------------------------------
// Simplicity

/// Inclusive bounds into the sorted configuration list.
struct Interval {
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t size() const { return hi - lo + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Checker { Literal, Gap, Both };

/// Sorted configurations of one marked word, with memoized simplicity.
class SimplicityContext {
public:
    /// Colourings of ⊳w⊲ in output order.
    SimplicityContext(std::vector<Colouring> configs, std::size_t n, Checker checker = Checker::Gap);
    /// Configurations of a marked interpretation (wrapped with to_marked if needed).
    static SimplicityContext of(const SetInterpretation& phi, const Word& w, Checker checker = Checker::Gap,
                                const Caps& caps = Caps::defaults());

    std::size_t size() const { return configs_.size(); }
    std::size_t word_length() const { return n_; }
    const std::vector<Colouring>& configs() const { return configs_; }
    Interval full() const;

    /// Throws Internal when the literal and gap checkers disagree (Checker::Both).
    bool is_d_simple(const Interval& I, const Split& s, int d);
    int simplicity(const Interval& I, const Split& s);

private:
    std::size_t split_index(const Split& s) const;
    int cls(std::size_t config, std::size_t split) const { return classes_[split][config]; }
    bool literal(const Interval& I, std::size_t s, int d);
    bool gap(const Interval& I, std::size_t s, int d);
    bool check(const Interval& I, std::size_t s, int d, Checker which);

    std::vector<Colouring> configs_;
    std::size_t n_;
    Checker checker_;
    std::vector<std::vector<int>> classes_; // per split, s-class id per configuration
    std::vector<int> class_count_;
    std::unordered_map<std::uint64_t, bool> memo_[2]; // literal, gap
};

struct SimplicityCell {
    Interval interval;
    Split split;
    int simplicity;
};

struct SimplicityTable {
    int max = -1;
    std::vector<SimplicityCell> cells; // filled when requested
};

/// All intervals × all splits. Throws CapExceeded.
SimplicityTable simplicity_table(const SetInterpretation& phi, const Word& w, bool keep_cells = false,
                                 Checker checker = Checker::Gap, const Caps& caps = Caps::defaults());
SimplicityTable simplicity_table(SimplicityContext& ctx, bool keep_cells = false,
                                 const Caps& caps = Caps::defaults());

// ---------------------------------------------------------------------------
// Tiles and tilings

enum class StepKind { Same, Opp, Suc };

struct Step {
    StepKind kind = StepKind::Suc;
    std::optional<unsigned> label;
    friend bool operator==(const Step&, const Step&) = default;
};

using Tile = std::vector<Step>;
using Tiling = std::vector<Tile>; // positions 0..|w|+1

std::string to_string(const Step& s); // "suc", "opp:2"
Step parse_step(std::string_view text); // throws UsageError

struct Block {
    std::size_t first = 0; // level range [first, last], 0-based
    std::size_t last = 0;
    StepKind kind = StepKind::Suc;
    Dir entry = Dir::Right;
    Dir exit = Dir::Right;
};

/// Throws MalformedTile when the tile starts with same.
std::vector<Block> block_decompose(const Tile& t);

struct TilingCheck {
    bool valid = false;
    std::optional<std::size_t> live_position;
    std::string reason; // empty when valid
};

TilingCheck tiling_validate(const Tiling& t);

struct LabelledSplit {
    Split split;
    std::optional<unsigned> label;
    friend bool operator==(const LabelledSplit&, const LabelledSplit&) = default;
};

/// Throws InvalidTiling.
std::vector<Split> tiling_to_splits(const Tiling& t);
std::vector<LabelledSplit> tiling_to_labelled_splits(const Tiling& t);

/// Reason the sequence is not well formed, if any. max_per_position 0 = unbounded.
std::optional<std::string> split_sequence_problem(const std::vector<Split>& seq, std::size_t n,
                                                  std::size_t max_per_position = 0);

/// Throws NotWellFormed.
Tiling splits_to_tiling(const std::vector<Split>& seq, std::size_t n, std::size_t max_per_position = 0);
Tiling splits_to_tiling(const std::vector<LabelledSplit>& seq, std::size_t n, std::size_t max_per_position = 0);

/// The four-position tiling suc·opp | opp·same·same·suc | suc·same·suc | opp.
Tiling sample_tiling();

// ---------------------------------------------------------------------------
// Funnels

struct FunnelCandidate {
    std::vector<std::pair<Interval, Split>> steps;
};

struct FunnelCheck {
    bool valid = true;
    int item = 0; // first violated item, 1..6
    std::size_t at = 0;
    std::string detail;
};

using BasisMember = std::function<bool(const Interval&, const Split&)>;

FunnelCheck validate_funnel(const FunnelCandidate& c, const BasisMember& basis, SimplicityContext& ctx);

} // namespace expreg
