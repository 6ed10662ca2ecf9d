#pragma once

#include <cstdint>
#include <optional>

#include "resil/game.hpp"
#include "resil/graph.hpp"
#include "resil/types.hpp"

namespace resil::oracle {

constexpr std::uint64_t kDefaultCap = 1'000'000;

/// m^|U|, saturating at UINT64_MAX.
std::uint64_t labeling_count(std::size_t control_count, int m);

struct FpcpVerdict {
    bool solvable = false;
    std::optional<Labeling> witness;
    std::uint64_t examined = 0;
};

/// Enumerates labelings U -> [m] (label of u_1 pinned to the first label)
/// and returns the first whose partition wins the safety game from x0.
/// Throws CapExceeded when m^|U| > cap.
FpcpVerdict exhaustive_fpcp(const Instance& inst, std::uint64_t cap = kDefaultCap);

/// Counts labelings that satisfy the all-labels-at-every-vertex condition on
/// a fixed subgraph; stops at the first hit when `stop_at_first`.
struct FixedSubgraphSearch {
    std::uint64_t examined = 0;
    std::uint64_t valid = 0;
    std::optional<Labeling> first_valid;
};
FixedSubgraphSearch exhaustive_fixed_subgraph(const InducedSubgraph& g, const IntVector& x0, int m,
                                              bool stop_at_first, std::uint64_t cap = kDefaultCap);

/// Minimax over the alternating game: the adversary picks a label, the
/// controller picks a control in that cell, for `depth` rounds. Memoized on
/// (state, remaining depth). Exact for depth >= |S| + 1.
bool game_tree_rpcp(const Instance& inst, const Partition& part, std::size_t depth);

/// Same search started from an arbitrary safe state.
bool game_tree_wins_from(const Instance& inst, const Partition& part, const IntVector& start, std::size_t depth);

}  // namespace resil::oracle
