#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "resil/types.hpp"

namespace resil {

/// Memoryless policy (state, adversary label) -> control index over a finite
/// domain of states. Entries may be absent (kNoAction) for hand-built stubs;
/// solver and labeling outputs are total on their domain.
class Policy {
  public:
    static constexpr int kNoAction = -1;

    Policy() = default;
    Policy(std::vector<IntVector> states, int m);

    [[nodiscard]] int label_count() const noexcept { return m_; }
    [[nodiscard]] const std::vector<IntVector>& states() const noexcept { return states_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] bool contains(const IntVector& x) const { return index_.contains(x); }
    [[nodiscard]] std::optional<std::size_t> index_of(const IntVector& x) const;

    void set(std::size_t state, Label d, int control) { table_[state * static_cast<std::size_t>(m_) + static_cast<std::size_t>(d)] = control; }
    [[nodiscard]] int at(std::size_t state, Label d) const { return table_[state * static_cast<std::size_t>(m_) + static_cast<std::size_t>(d)]; }
    /// Control index chosen at x under label d, or nullopt outside the domain.
    [[nodiscard]] std::optional<std::size_t> action(const IntVector& x, Label d) const;

  private:
    std::vector<IntVector> states_;
    std::unordered_map<IntVector, std::size_t, IntVectorHash> index_;
    std::vector<int> table_;
    int m_ = 1;
};

struct GameResult {
    Policy policy;  // its domain is the winning set
    bool solvable = false;
    std::size_t iterations = 0;  // refinement rounds (naive solver only)

    [[nodiscard]] const std::vector<IntVector>& winning_set() const noexcept { return policy.states(); }
};

/// Throws InvalidArgument unless `part` has m cells that partition U.
void check_partition(const Instance& inst, const Partition& part);

/// Greatest fixed point W = {x in W : for all d exists u in U(d), x+u in W},
/// iterated from W = S. Policy ties go to the smallest control index.
GameResult solve_rpcp(const Instance& inst, const Partition& part);

/// Same contract as solve_rpcp, computed with per-(state, label) successor
/// counters and a worklist in O(|S| |U|).
GameResult counter_based_attractor(const Instance& inst, const Partition& part);

struct PolicyCheck {
    bool ok = true;
    std::string problem;  // first failure, empty when ok
};

/// Closed-loop invariance of `policy` under `part`: x0 is in the domain, the
/// domain lies in S, and every (x, d) has an action from cell d whose
/// successor stays in the domain.
PolicyCheck check_policy(const Instance& inst, const Partition& part, const Policy& policy);

}  // namespace resil
