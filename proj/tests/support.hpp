#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "resil/game.hpp"
#include "resil/types.hpp"

namespace testkit {

using resil::ControlSet;
using resil::Instance;
using resil::IntVector;
using resil::Labeling;
using resil::Partition;
using resil::SafeSet;

// Error code thrown by f, or nullopt when it returns normally.
template <typename F>
std::optional<resil::ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const resil::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline IntVector unit(std::size_t n, std::size_t i, std::int64_t s = 1) {
    IntVector e(n);
    e[i] = s;
    return e;
}

// Controls {e1, -e1, ..., en, -en, 0} on the box of radius k around x0 = 0.
inline Instance vehicle(std::size_t n, std::int64_t k, int m) {
    std::vector<IntVector> us;
    for (std::size_t i = 0; i < n; ++i) {
        us.push_back(unit(n, i, 1));
        us.push_back(unit(n, i, -1));
    }
    us.emplace_back(n);
    Instance inst;
    inst.n = n;
    inst.x0 = IntVector(n);
    inst.controls = ControlSet(std::move(us));
    inst.m = m;
    inst.safe = SafeSet::inf_ball(n, k);
    return resil::validate_instance(std::move(inst));
}

// Controls {u : |u|_inf = 1} on the 1-norm ball of radius 1, m = 3.
inline Instance king_on_diamond() {
    std::vector<IntVector> us;
    for (std::int64_t a = -1; a <= 1; ++a) {
        for (std::int64_t b = -1; b <= 1; ++b) {
            if (a != 0 || b != 0) {
                us.push_back(IntVector{a, b});
            }
        }
    }
    Instance inst;
    inst.n = 2;
    inst.x0 = IntVector{0, 0};
    inst.controls = ControlSet(std::move(us));
    inst.m = 3;
    inst.safe = SafeSet::one_ball(2, 1);
    return resil::validate_instance(std::move(inst));
}

// Partition given as lists of control vectors, one list per label.
inline Partition cells_of(const Instance& inst, const std::vector<std::vector<IntVector>>& cells) {
    Partition part;
    for (const auto& cell : cells) {
        std::vector<std::size_t> idx;
        for (const auto& u : cell) {
            const auto k = inst.controls.index_of(u);
            if (k < 0) {
                throw std::invalid_argument("control " + u.key() + " not in instance");
            }
            idx.push_back(static_cast<std::size_t>(k));
        }
        part.cells.push_back(std::move(idx));
    }
    return part;
}

// Two partitions of U = {e1, -e1, e2, -e2, 0}: {e1, e2} against the rest
// (losing), and {e1, -e1} against {e2, -e2, 0} (winning).
inline Partition east_north_split(const Instance& inst) {
    return cells_of(inst, {{IntVector{1, 0}, IntVector{0, 1}}, {IntVector{-1, 0}, IntVector{0, -1}, IntVector{0, 0}}});
}

inline Partition axis_split(const Instance& inst) {
    return cells_of(inst, {{IntVector{1, 0}, IntVector{-1, 0}}, {IntVector{0, 1}, IntVector{0, -1}, IntVector{0, 0}}});
}

// Random planar instance: S a box of radius 1..4 (at most 81 points) or a
// random subset of one, U a random subset of {-1,0,1}^2 with 1..9 elements,
// m in [1, min(3, |U|)], and a uniformly random labeling (cells may be empty).
struct RandomCase {
    Instance inst;
    Labeling lab;
    Partition part;
};

inline RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> radius(1, 4);
    const std::int64_t k = radius(rng);
    std::vector<IntVector> box;
    for (std::int64_t a = -k; a <= k; ++a) {
        for (std::int64_t b = -k; b <= k; ++b) {
            box.push_back(IntVector{a, b});
        }
    }
    SafeSet safe;
    if (std::bernoulli_distribution(0.5)(rng)) {
        safe = SafeSet::inf_ball(2, k);
    } else {
        std::vector<IntVector> pts;
        std::bernoulli_distribution keep(0.8);
        for (const auto& p : box) {
            if (keep(rng)) {
                pts.push_back(p);
            }
        }
        if (pts.empty()) {
            pts.push_back(box.front());
        }
        safe = SafeSet::explicit_points(2, std::move(pts));
    }

    std::vector<IntVector> moves;
    for (std::int64_t a = -1; a <= 1; ++a) {
        for (std::int64_t b = -1; b <= 1; ++b) {
            moves.push_back(IntVector{a, b});
        }
    }
    std::shuffle(moves.begin(), moves.end(), rng);
    const auto count = std::uniform_int_distribution<std::size_t>(1, moves.size())(rng);
    moves.resize(count);

    Instance inst;
    inst.n = 2;
    inst.x0 = safe.points()[std::uniform_int_distribution<std::size_t>(0, safe.size() - 1)(rng)];
    inst.controls = ControlSet(std::move(moves));
    inst.m = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<std::size_t>(3, count)))(rng);
    inst.safe = std::move(safe);
    inst = resil::validate_instance(std::move(inst));

    Labeling lab;
    std::uniform_int_distribution<int> pick(0, inst.m - 1);
    for (std::size_t i = 0; i < inst.controls.size(); ++i) {
        lab.labels.push_back(pick(rng));
    }
    auto part = resil::labeling_to_partition(lab, inst.m);
    return {std::move(inst), std::move(lab), std::move(part)};
}

}  // namespace testkit
