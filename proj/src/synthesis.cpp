#include "resil/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace resil {

const char* to_string(SynthesisStatus s) noexcept {
    switch (s) {
        case SynthesisStatus::Solved: return "SOLVED";
        case SynthesisStatus::InfeasibleProven: return "INFEASIBLE_PROVEN";
        case SynthesisStatus::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

const char* to_string(SynthesisMethod m) noexcept {
    switch (m) {
        case SynthesisMethod::None: return "none";
        case SynthesisMethod::SufficientBound: return "sufficient-bound";
        case SynthesisMethod::VerifiedGreedy: return "verified-greedy";
        case SynthesisMethod::Randomized: return "randomized";
        case SynthesisMethod::Oracle: return "oracle";
    }
    return "none";
}

Policy policy_from_labeling(const InducedSubgraph& g, const Labeling& lab, int m) {
    if (lab.size() != g.controls().size()) {
        throw Error(ErrorCode::InvalidArgument, "labeling size does not match the control set");
    }
    Policy policy(g.vertices(), m);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        // Out-edges are stored in control order, so the first hit is the smallest index.
        for (const auto& e : g.out_edges(v)) {
            const auto d = lab[e.control];
            if (d >= 0 && d < m && policy.at(v, d) == Policy::kNoAction) {
                policy.set(v, d, static_cast<int>(e.control));
            }
        }
        for (Label d = 0; d < m; ++d) {
            if (policy.at(v, d) == Policy::kNoAction) {
                throw Error(ErrorCode::PreconditionViolated, "vertex (" + g.vertex(v).key() +
                                                                 ") has no surviving edge with label " +
                                                                 std::to_string(d + 1));
            }
        }
    }
    return policy;
}

std::size_t sufficient_threshold(int m, std::size_t safe_size) {
    const double md = static_cast<double>(m);
    const double bound = md * std::log(md * static_cast<double>(safe_size));
    return bound <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(bound));
}

std::vector<IntVector> reachable_states(const Instance& inst, const Policy& policy) {
    PointSet seen{inst.x0};
    std::deque<IntVector> frontier{inst.x0};
    while (!frontier.empty()) {
        const auto x = frontier.front();
        frontier.pop_front();
        for (Label d = 0; d < policy.label_count(); ++d) {
            auto k = policy.action(x, d);
            if (!k) {
                continue;
            }
            auto y = x + inst.controls[*k];
            if (seen.insert(y).second) {
                frontier.push_back(std::move(y));
            }
        }
    }
    std::vector<IntVector> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Candidate {
    InducedSubgraph graph;
    std::size_t threshold = 0;
    std::string origin;
};

void finish(SynthesisOutcome& out, const Instance& inst, const InducedSubgraph& g, const Labeling& lab,
            SynthesisMethod method, std::size_t threshold) {
    out.status = SynthesisStatus::Solved;
    out.method = method;
    out.labeling = lab;
    out.partition = labeling_to_partition(lab, inst.m);
    out.policy = policy_from_labeling(g, lab, inst.m);
    out.shat = g.vertices();
    out.peel_threshold = threshold;
    out.report = check_conditions(g, inst.m);
    out.certificate = counter_based_attractor(inst, *out.partition);
    if (!out.certificate->solvable) {
        throw std::logic_error("synthesized partition failed certification by the game solver");
    }
}

}  // namespace

SynthesisOutcome synthesize_fpcp(const Instance& inst, const SynthesisConfig& config,
                                 const std::optional<std::vector<IntVector>>& shat_hint) {
    if (config.seeds < 0) {
        throw Error(ErrorCode::ConfigError, "seeds must be nonnegative");
    }
    if (config.oracle_cap <= 0) {
        throw Error(ErrorCode::ConfigError, "oracle cap must be positive");
    }
    SynthesisOutcome out;
    const auto& safe_points = inst.safe.points();

    std::vector<Candidate> candidates;
    auto try_greedy = [&](const Candidate& c) {
        const auto report = check_conditions(c.graph, inst.m);
        const auto greedy = greedy_label(c.graph, inst.m);
        if (verify_labeling(c.graph, greedy.labeling, inst.x0, inst.m).ok) {
            finish(out, inst, c.graph, greedy.labeling,
                   report.sufficient_ok ? SynthesisMethod::SufficientBound : SynthesisMethod::VerifiedGreedy,
                   c.threshold);
            out.log.push_back("greedy labeling verified on " + c.origin + " subgraph");
            return true;
        }
        out.log.push_back("greedy labeling failed on " + c.origin + " subgraph (" +
                          std::to_string(c.graph.vertex_count()) + " vertices), final estimate " +
                          std::to_string(greedy.final_estimator.total));
        return false;
    };

    if (shat_hint) {
        for (const auto& p : *shat_hint) {
            if (!inst.safe.contains(p)) {
                throw Error(ErrorCode::InvalidArgument, "candidate subgraph leaves the safe set at (" + p.key() + ")");
            }
        }
        auto g = build_induced(*shat_hint, inst.controls);
        if (g.contains(inst.x0)) {
            candidates.push_back({std::move(g), 0, "supplied"});
            if (try_greedy(candidates.back())) {
                return out;
            }
        } else {
            out.log.emplace_back("supplied subgraph does not contain x0; ignored");
        }
    }

    const auto t_bound = sufficient_threshold(inst.m, safe_points.size());
    const auto t_min = static_cast<std::size_t>(inst.m);
    auto core_bound = peel_to_min_degree(safe_points, inst.controls, t_bound, inst.x0);
    auto core_min = peel_to_min_degree(safe_points, inst.controls, t_min, inst.x0);
    out.log.push_back("peel at " + std::to_string(t_bound) + ": " +
                      (core_bound ? std::to_string(core_bound->vertex_count()) + " vertices" : "x0 removed"));
    out.log.push_back("peel at " + std::to_string(t_min) + ": " +
                      (core_min ? std::to_string(core_min->vertex_count()) + " vertices" : "x0 removed"));
    const auto first_peeled = candidates.size();
    if (core_bound) {
        candidates.push_back({*core_bound, t_bound, "peel"});
    }
    if (core_min && (!core_bound || core_min->vertices() != core_bound->vertices())) {
        candidates.push_back({*core_min, t_min, "peel"});
    }
    if (!candidates.empty()) {
        out.report = check_conditions(candidates.front().graph, inst.m);
        out.shat = candidates.front().graph.vertices();
    }
    for (auto i = first_peeled; i < candidates.size(); ++i) {
        if (try_greedy(candidates[i])) {
            return out;
        }
    }

    for (const auto& c : candidates) {
        for (std::int64_t i = 0; i < config.seeds; ++i) {
            const auto lab = random_labeling(inst.controls.size(), inst.m, config.seed + static_cast<std::uint64_t>(i));
            if (verify_labeling(c.graph, lab, inst.x0, inst.m).ok) {
                finish(out, inst, c.graph, lab, SynthesisMethod::Randomized, c.threshold);
                out.log.push_back("random labeling with seed " + std::to_string(config.seed + static_cast<std::uint64_t>(i)) +
                                  " verified");
                return out;
            }
        }
    }

    const auto space = oracle::labeling_count(inst.controls.size(), inst.m);
    if (config.use_oracle && space <= static_cast<std::uint64_t>(config.oracle_cap)) {
        const auto verdict = oracle::exhaustive_fpcp(inst, static_cast<std::uint64_t>(config.oracle_cap));
        out.log.push_back("exhaustive search examined " + std::to_string(verdict.examined) + " labelings");
        if (verdict.solvable) {
            const auto part = labeling_to_partition(*verdict.witness, inst.m);
            const auto winning = counter_based_attractor(inst, part);
            const auto g = build_induced(winning.winning_set(), inst.controls);
            finish(out, inst, g, *verdict.witness, SynthesisMethod::Oracle, 0);
            return out;
        }
        out.status = SynthesisStatus::InfeasibleProven;
        out.method = SynthesisMethod::Oracle;
        return out;
    }

    // Every valid subgraph has min out-degree >= m and so lies inside the
    // m-core. Only exhaustive search may claim infeasibility, so this is logged.
    if (!core_min) {
        out.log.emplace_back("x0 does not survive peeling at degree m; no subgraph meets the necessary condition");
    }
    out.status = SynthesisStatus::Unknown;
    return out;
}

}  // namespace resil
