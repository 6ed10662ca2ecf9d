#include "resil/oracle.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "resil/labeling.hpp"

namespace resil::oracle {

std::uint64_t labeling_count(std::size_t control_count, int m) {
    std::uint64_t total = 1;
    const auto base = static_cast<std::uint64_t>(m);
    for (std::size_t i = 0; i < control_count; ++i) {
        if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= base;
    }
    return total;
}

namespace {

void check_cap(std::size_t control_count, int m, std::uint64_t cap) {
    const auto count = labeling_count(control_count, m);
    if (count > cap) {
        throw Error(ErrorCode::CapExceeded, "enumeration of " + std::to_string(m) + "^" +
                                                std::to_string(control_count) + " labelings exceeds cap " +
                                                std::to_string(cap));
    }
}

// Odometer over labels; position 0 stays pinned at label 0.
bool advance(Labeling& lab, int m) {
    for (std::size_t i = lab.size(); i-- > 1;) {
        if (++lab.labels[i] < m) {
            return true;
        }
        lab.labels[i] = 0;
    }
    return false;
}

}  // namespace

FpcpVerdict exhaustive_fpcp(const Instance& inst, std::uint64_t cap) {
    check_cap(inst.controls.size(), inst.m, cap);
    FpcpVerdict verdict;
    Labeling lab;
    lab.labels.assign(inst.controls.size(), 0);
    std::vector<std::size_t> cell_sizes(static_cast<std::size_t>(inst.m));
    do {
        ++verdict.examined;
        std::fill(cell_sizes.begin(), cell_sizes.end(), 0);
        for (auto l : lab.labels) {
            ++cell_sizes[static_cast<std::size_t>(l)];
        }
        // An empty cell hands the adversary a label with no legal move.
        if (std::find(cell_sizes.begin(), cell_sizes.end(), 0) != cell_sizes.end()) {
            continue;
        }
        const auto part = labeling_to_partition(lab, inst.m);
        if (counter_based_attractor(inst, part).solvable) {
            verdict.solvable = true;
            verdict.witness = lab;
            return verdict;
        }
    } while (advance(lab, inst.m));
    return verdict;
}

FixedSubgraphSearch exhaustive_fixed_subgraph(const InducedSubgraph& g, const IntVector& x0, int m,
                                              bool stop_at_first, std::uint64_t cap) {
    check_cap(g.controls().size(), m, cap);
    FixedSubgraphSearch search;
    Labeling lab;
    lab.labels.assign(g.controls().size(), 0);
    // Every labeling is visited here (no symmetry pinning) so counts are exact.
    while (true) {
        ++search.examined;
        if (verify_labeling(g, lab, x0, m).ok) {
            ++search.valid;
            if (!search.first_valid) {
                search.first_valid = lab;
            }
            if (stop_at_first) {
                return search;
            }
        }
        std::size_t i = 0;
        while (i < lab.size() && ++lab.labels[i] == m) {
            lab.labels[i++] = 0;
        }
        if (i == lab.size()) {
            return search;
        }
    }
}

namespace {

class GameTree {
  public:
    GameTree(const Instance& inst, const Partition& part) : inst_(inst), part_(part) {}

    bool wins(const IntVector& x, std::size_t depth) {
        if (!inst_.safe.contains(x)) {
            return false;
        }
        if (depth == 0) {
            return true;
        }
        auto& slot = memo_[x];
        if (slot.size() < depth + 1) {
            slot.resize(depth + 1, kUnknown);
        }
        if (slot[depth] != kUnknown) {
            return slot[depth] == kWin;
        }
        bool all_labels = true;
        for (const auto& cell : part_.cells) {
            bool some_move = false;
            for (auto k : cell) {
                if (wins(x + inst_.controls[k], depth - 1)) {
                    some_move = true;
                    break;
                }
            }
            if (!some_move) {
                all_labels = false;
                break;
            }
        }
        slot[depth] = all_labels ? kWin : kLose;
        return all_labels;
    }

  private:
    static constexpr char kUnknown = 0;
    static constexpr char kWin = 1;
    static constexpr char kLose = 2;
    const Instance& inst_;
    const Partition& part_;
    std::unordered_map<IntVector, std::vector<char>, IntVectorHash> memo_;
};

}  // namespace

bool game_tree_wins_from(const Instance& inst, const Partition& part, const IntVector& start, std::size_t depth) {
    check_partition(inst, part);
    GameTree tree(inst, part);
    return tree.wins(start, depth);
}

bool game_tree_rpcp(const Instance& inst, const Partition& part, std::size_t depth) {
    return game_tree_wins_from(inst, part, inst.x0, depth);
}

}  // namespace resil::oracle
