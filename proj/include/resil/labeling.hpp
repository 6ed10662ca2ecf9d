#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resil/graph.hpp"
#include "resil/types.hpp"

namespace resil {

/// Degree-based existence conditions for a labeling of a candidate subgraph.
struct ConditionReport {
    std::size_t vertex_count = 0;
    std::size_t min_out_degree = 0;
    int m = 1;
    bool necessary_ok = false;         // min_out_degree >= m
    double sufficient_bound = 0.0;     // m ln(m |S^|)
    bool sufficient_ok = false;        // min_out_degree strictly above the bound
    double failure_probability_bound = 0.0;  // m |S^| (1 - 1/m)^min_out_degree
};

ConditionReport check_conditions(const InducedSubgraph& g, int m);

/// Independent uniform labels in [0, m), reproducible from `seed`.
Labeling random_labeling(std::size_t control_count, int m, std::uint64_t seed);

enum class ViolationKind { None, InitialStateMissing, LabelMissing, WrongSize };

struct Violation {
    ViolationKind kind = ViolationKind::None;
    std::size_t vertex = 0;  // vertex index in the subgraph (LabelMissing)
    Label label = 0;         // the label with no surviving edge (LabelMissing)
};

struct VerifyResult {
    bool ok = false;
    Violation first_violation;
};

/// Checks that x0 is a vertex and that every vertex sees all m labels on its
/// out-edges. Translation invariance holds by construction because labels
/// live on controls, not on edges.
VerifyResult verify_labeling(const InducedSubgraph& g, const Labeling& lab, const IntVector& x0, int m);

/// Conditional failure probabilities Pr(label j missing at x | assigned prefix),
/// one term per (vertex, label), row-major by vertex.
struct Estimator {
    int m = 1;
    std::vector<double> terms;
    double total = 0.0;

    [[nodiscard]] double term(std::size_t vertex, Label j) const {
        return terms[vertex * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
    }
};

/// Closed-form estimator after fixing the labels of controls 0..assigned-1
/// (`prefix` may be longer; only its first `assigned` entries are read).
Estimator estimator_closed_form(const InducedSubgraph& g, int m, const Labeling& prefix, std::size_t assigned);

struct GreedyLabeling {
    Labeling labeling;
    Estimator final_estimator;
    std::vector<double> totals;  // totals[i] = estimator total after i assignments
};

/// Derandomized labeling by conditional expectations: controls are labeled in
/// order, each with the label minimizing the estimator total (ties -> smallest
/// label). Runs in O(|E| m + |U| m) after an O(|E|) precomputation.
GreedyLabeling greedy_label(const InducedSubgraph& g, int m);

}  // namespace resil
