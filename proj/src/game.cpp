#include "resil/game.hpp"

#include <algorithm>
#include <deque>

namespace resil {

Policy::Policy(std::vector<IntVector> states, int m) : states_(std::move(states)), m_(m) {
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "policy needs at least one label");
    }
    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (!index_.emplace(states_[i], i).second) {
            throw Error(ErrorCode::InvalidArgument, "policy state " + states_[i].key() + " listed twice");
        }
    }
    table_.assign(states_.size() * static_cast<std::size_t>(m), kNoAction);
}

std::optional<std::size_t> Policy::index_of(const IntVector& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> Policy::action(const IntVector& x, Label d) const {
    if (d < 0 || d >= m_) {
        return std::nullopt;
    }
    auto idx = index_of(x);
    if (!idx) {
        return std::nullopt;
    }
    const int a = at(*idx, d);
    if (a == kNoAction) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(a);
}

void check_partition(const Instance& inst, const Partition& part) {
    if (part.label_count() != static_cast<std::size_t>(inst.m)) {
        throw Error(ErrorCode::InvalidArgument, "partition has " + std::to_string(part.label_count()) +
                                                    " cells, expected m = " + std::to_string(inst.m));
    }
    (void)partition_to_labeling(part, inst.controls.size());
}

namespace {

// successor[v * |U| + k] = index in S of S[v] + u_k, or -1 when it leaves S.
struct SafeArena {
    std::vector<long> successor;
    std::size_t controls = 0;
};

SafeArena build_arena(const Instance& inst) {
    const auto& pts = inst.safe.points();
    SafeArena arena;
    arena.controls = inst.controls.size();
    arena.successor.assign(pts.size() * arena.controls, -1);
    IntVector next;
    for (std::size_t v = 0; v < pts.size(); ++v) {
        for (std::size_t k = 0; k < arena.controls; ++k) {
            next = pts[v];
            next += inst.controls[k];
            arena.successor[v * arena.controls + k] = static_cast<long>(inst.safe.index_of(next));
        }
    }
    return arena;
}

GameResult extract(const Instance& inst, const Partition& part, const SafeArena& arena,
                   const std::vector<char>& winning) {
    const auto& pts = inst.safe.points();
    std::vector<IntVector> states;
    std::vector<std::size_t> safe_index;
    for (std::size_t v = 0; v < pts.size(); ++v) {
        if (winning[v]) {
            states.push_back(pts[v]);
            safe_index.push_back(v);
        }
    }
    GameResult result;
    result.policy = Policy(std::move(states), inst.m);
    for (std::size_t i = 0; i < safe_index.size(); ++i) {
        const auto v = safe_index[i];
        for (std::size_t d = 0; d < part.cells.size(); ++d) {
            // Cells are not required to be sorted.
            int best = Policy::kNoAction;
            for (auto k : part.cells[d]) {
                const auto s = arena.successor[v * arena.controls + k];
                if (s >= 0 && winning[static_cast<std::size_t>(s)] && (best < 0 || static_cast<int>(k) < best)) {
                    best = static_cast<int>(k);
                }
            }
            result.policy.set(i, static_cast<Label>(d), best);
        }
    }
    result.solvable = result.policy.contains(inst.x0);
    return result;
}

}  // namespace

GameResult solve_rpcp(const Instance& inst, const Partition& part) {
    check_partition(inst, part);
    const auto arena = build_arena(inst);
    const auto count = inst.safe.size();
    std::vector<char> winning(count, 1);
    bool changed = true;
    std::size_t rounds = 0;
    while (changed) {
        changed = false;
        ++rounds;
        std::vector<char> next = winning;
        for (std::size_t v = 0; v < count; ++v) {
            if (!winning[v]) {
                continue;
            }
            for (const auto& cell : part.cells) {
                const bool escape = std::any_of(cell.begin(), cell.end(), [&](std::size_t k) {
                    const auto s = arena.successor[v * arena.controls + k];
                    return s >= 0 && winning[static_cast<std::size_t>(s)];
                });
                if (!escape) {
                    next[v] = 0;
                    changed = true;
                    break;
                }
            }
        }
        winning.swap(next);
    }
    auto result = extract(inst, part, arena, winning);
    result.iterations = rounds;
    return result;
}

GameResult counter_based_attractor(const Instance& inst, const Partition& part) {
    check_partition(inst, part);
    const auto arena = build_arena(inst);
    const auto count = inst.safe.size();
    const auto m = part.cells.size();
    const auto lab = partition_to_labeling(part, inst.controls.size());

    std::vector<std::size_t> counter(count * m, 0);
    std::vector<std::vector<std::size_t>> preds(count);
    std::vector<std::vector<std::size_t>> pred_control(count);
    for (std::size_t v = 0; v < count; ++v) {
        for (std::size_t k = 0; k < arena.controls; ++k) {
            const auto s = arena.successor[v * arena.controls + k];
            if (s >= 0) {
                ++counter[v * m + static_cast<std::size_t>(lab[k])];
                preds[static_cast<std::size_t>(s)].push_back(v);
                pred_control[static_cast<std::size_t>(s)].push_back(k);
            }
        }
    }

    std::vector<char> winning(count, 1);
    std::deque<std::size_t> losing;
    for (std::size_t v = 0; v < count; ++v) {
        for (std::size_t d = 0; d < m; ++d) {
            if (counter[v * m + d] == 0) {
                winning[v] = 0;
                losing.push_back(v);
                break;
            }
        }
    }
    while (!losing.empty()) {
        const auto y = losing.front();
        losing.pop_front();
        for (std::size_t i = 0; i < preds[y].size(); ++i) {
            const auto x = preds[y][i];
            if (!winning[x]) {
                continue;
            }
            auto& c = counter[x * m + static_cast<std::size_t>(lab[pred_control[y][i]])];
            if (--c == 0) {
                winning[x] = 0;
                losing.push_back(x);
            }
        }
    }
    return extract(inst, part, arena, winning);
}

PolicyCheck check_policy(const Instance& inst, const Partition& part, const Policy& policy) {
    check_partition(inst, part);
    auto fail = [](std::string why) { return PolicyCheck{false, std::move(why)}; };
    if (policy.label_count() != inst.m) {
        return fail("policy has " + std::to_string(policy.label_count()) + " labels, instance has " +
                    std::to_string(inst.m));
    }
    if (!policy.contains(inst.x0)) {
        return fail("x0 (" + inst.x0.key() + ") is outside the policy domain");
    }
    std::vector<Label> label_of(inst.controls.size(), -1);
    for (std::size_t d = 0; d < part.cells.size(); ++d) {
        for (auto k : part.cells[d]) {
            label_of[k] = static_cast<Label>(d);
        }
    }
    for (std::size_t i = 0; i < policy.size(); ++i) {
        const auto& x = policy.states()[i];
        if (!inst.safe.contains(x)) {
            return fail("domain state (" + x.key() + ") is outside S");
        }
        for (Label d = 0; d < inst.m; ++d) {
            const std::string where = "(" + x.key() + ") under label " + std::to_string(d + 1);
            const int k = policy.at(i, d);
            if (k == Policy::kNoAction) {
                return fail("no action at " + where);
            }
            if (static_cast<std::size_t>(k) >= inst.controls.size() || label_of[static_cast<std::size_t>(k)] != d) {
                return fail("action at " + where + " is not in that label's cell");
            }
            if (!policy.contains(x + inst.controls[static_cast<std::size_t>(k)])) {
                return fail("action at " + where + " leaves the policy domain");
            }
        }
    }
    return {};
}

}  // namespace resil
