#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resil/game.hpp"
#include "resil/graph.hpp"
#include "resil/labeling.hpp"
#include "resil/oracle.hpp"
#include "resil/types.hpp"

namespace resil {

enum class SynthesisStatus { Solved, InfeasibleProven, Unknown };
enum class SynthesisMethod { None, SufficientBound, VerifiedGreedy, Randomized, Oracle };

const char* to_string(SynthesisStatus s) noexcept;
const char* to_string(SynthesisMethod m) noexcept;

struct SynthesisConfig {
    std::int64_t seeds = 32;          // randomized retries per candidate subgraph
    std::uint64_t seed = 0;           // base seed; retry i uses seed + i
    std::int64_t oracle_cap = static_cast<std::int64_t>(oracle::kDefaultCap);
    bool use_oracle = true;
};

struct SynthesisOutcome {
    SynthesisStatus status = SynthesisStatus::Unknown;
    SynthesisMethod method = SynthesisMethod::None;
    std::optional<Labeling> labeling;
    std::optional<Partition> partition;
    std::optional<Policy> policy;           // restricted to shat
    std::optional<GameResult> certificate;  // maximal winning set for the partition
    std::vector<IntVector> shat;
    std::optional<ConditionReport> report;
    std::size_t peel_threshold = 0;  // threshold that produced shat (0 when none did)
    std::vector<std::string> log;
};

/// Policy on the subgraph's vertices: for each (x, d) the smallest control
/// index u with label d and x + u inside the subgraph. Throws
/// PreconditionViolated when some vertex lacks an edge of some label.
Policy policy_from_labeling(const InducedSubgraph& g, const Labeling& lab, int m);

/// Degree threshold ceil(m ln(m |S|)) used for the first peeling attempt.
std::size_t sufficient_threshold(int m, std::size_t safe_size);

/// Chooses candidate subgraphs by peeling, labels them greedily (then
/// randomly), falls back to exhaustive search, and certifies any solution
/// with the game solver. `shat_hint` is tried before the peeled candidates.
SynthesisOutcome synthesize_fpcp(const Instance& inst, const SynthesisConfig& config,
                                 const std::optional<std::vector<IntVector>>& shat_hint = std::nullopt);

/// States reachable from x0 under `policy` for every adversary sequence.
std::vector<IntVector> reachable_states(const Instance& inst, const Policy& policy);

}  // namespace resil
