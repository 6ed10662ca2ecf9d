#include "resil/labeling.hpp"

#include <cmath>
#include <random>

namespace resil {

ConditionReport check_conditions(const InducedSubgraph& g, int m) {
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
    }
    if (g.vertex_count() == 0) {
        throw Error(ErrorCode::InvalidArgument, "condition check needs a nonempty subgraph");
    }
    ConditionReport r;
    r.vertex_count = g.vertex_count();
    r.min_out_degree = g.min_out_degree();
    r.m = m;
    const double md = static_cast<double>(m);
    const double deg = static_cast<double>(r.min_out_degree);
    r.necessary_ok = r.min_out_degree >= static_cast<std::size_t>(m);
    r.sufficient_bound = md * std::log(md * static_cast<double>(r.vertex_count));
    // An exact tie with the bound counts as failure.
    r.sufficient_ok = deg > r.sufficient_bound;
    r.failure_probability_bound = md * static_cast<double>(r.vertex_count) * std::pow(1.0 - 1.0 / md, deg);
    return r;
}

Labeling random_labeling(std::size_t control_count, int m, std::uint64_t seed) {
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, m - 1);
    Labeling lab;
    lab.labels.resize(control_count);
    for (auto& l : lab.labels) {
        l = pick(rng);
    }
    return lab;
}

VerifyResult verify_labeling(const InducedSubgraph& g, const Labeling& lab, const IntVector& x0, int m) {
    VerifyResult result;
    if (lab.size() != g.controls().size() || m < 1) {
        result.first_violation.kind = ViolationKind::WrongSize;
        return result;
    }
    if (!g.contains(x0)) {
        result.first_violation.kind = ViolationKind::InitialStateMissing;
        return result;
    }
    std::vector<char> seen(static_cast<std::size_t>(m));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& e : g.out_edges(v)) {
            const auto l = lab[e.control];
            if (l >= 0 && l < m) {
                seen[static_cast<std::size_t>(l)] = 1;
            }
        }
        for (int j = 0; j < m; ++j) {
            if (!seen[static_cast<std::size_t>(j)]) {
                result.first_violation = {ViolationKind::LabelMissing, v, j};
                return result;
            }
        }
    }
    result.ok = true;
    return result;
}

Estimator estimator_closed_form(const InducedSubgraph& g, int m, const Labeling& prefix, std::size_t assigned) {
    const double q = 1.0 - 1.0 / static_cast<double>(m);
    Estimator est;
    est.m = m;
    est.terms.assign(g.vertex_count() * static_cast<std::size_t>(m), 0.0);
    std::vector<char> covered(static_cast<std::size_t>(m));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::fill(covered.begin(), covered.end(), 0);
        std::size_t remaining = 0;
        for (const auto& e : g.out_edges(v)) {
            if (e.control < assigned) {
                covered[static_cast<std::size_t>(prefix[e.control])] = 1;
            } else {
                ++remaining;
            }
        }
        for (int j = 0; j < m; ++j) {
            const double t = covered[static_cast<std::size_t>(j)] ? 0.0 : std::pow(q, static_cast<double>(remaining));
            est.terms[v * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] = t;
            est.total += t;
        }
    }
    return est;
}

GreedyLabeling greedy_label(const InducedSubgraph& g, int m) {
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
    }
    if (g.vertex_count() == 0) {
        throw Error(ErrorCode::InvalidArgument, "greedy labeling needs a nonempty subgraph");
    }
    const auto mm = static_cast<std::size_t>(m);
    const auto vertex_count = g.vertex_count();
    const auto control_count = g.controls().size();
    const double q = 1.0 - 1.0 / static_cast<double>(m);

    std::size_t max_degree = 0;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        max_degree = std::max(max_degree, g.out_degree(v));
    }
    std::vector<double> qpow(max_degree + 1);
    qpow[0] = 1.0;
    for (std::size_t r = 1; r <= max_degree; ++r) {
        qpow[r] = qpow[r - 1] * q;
    }

    const auto users = g.users_by_control();
    std::vector<std::size_t> remaining(vertex_count);
    std::vector<char> covered(vertex_count * mm, 0);

    GreedyLabeling out;
    out.final_estimator.m = m;
    out.final_estimator.terms.resize(vertex_count * mm);
    double total = 0.0;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        remaining[v] = g.out_degree(v);
        for (std::size_t j = 0; j < mm; ++j) {
            out.final_estimator.terms[v * mm + j] = qpow[remaining[v]];
            total += qpow[remaining[v]];
        }
    }
    out.totals.reserve(control_count + 1);
    out.totals.push_back(total);
    out.labeling.labels.assign(control_count, 0);

    // Fixing control i to label l changes the total by mean(gain) - gain(l),
    // where gain(l) sums q^(r-1) over users of i that have not yet seen l.
    std::vector<double> gain(mm);
    for (std::size_t i = 0; i < control_count; ++i) {
        std::fill(gain.begin(), gain.end(), 0.0);
        for (auto v : users[i]) {
            const double w = qpow[remaining[v] - 1];
            for (std::size_t j = 0; j < mm; ++j) {
                if (!covered[v * mm + j]) {
                    gain[j] += w;
                }
            }
        }
        std::size_t best = 0;
        for (std::size_t j = 1; j < mm; ++j) {
            if (gain[j] > gain[best] + 1e-12 * std::max(1.0, gain[best])) {
                best = j;
            }
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < mm; ++j) {
            delta += gain[j] - gain[best];
        }
        delta /= static_cast<double>(m);
        if (delta > 0.0) {
            delta = 0.0;  // only reachable through the tie tolerance above
        }
        total += delta;

        out.labeling.labels[i] = static_cast<Label>(best);
        for (auto v : users[i]) {
            --remaining[v];
            covered[v * mm + best] = 1;
            for (std::size_t j = 0; j < mm; ++j) {
                out.final_estimator.terms[v * mm + j] = covered[v * mm + j] ? 0.0 : qpow[remaining[v]];
            }
        }
        out.totals.push_back(total);
    }

    // Every term is now exactly 0 or 1; report the exact sum.
    double exact = 0.0;
    for (auto t : out.final_estimator.terms) {
        exact += t;
    }
    out.final_estimator.total = exact;
    return out;
}

}  // namespace resil
