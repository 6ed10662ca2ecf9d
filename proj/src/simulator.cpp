#include "resil/simulator.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace resil::sim {

ScriptedAdversary::ScriptedAdversary(std::vector<Label> script) : script_(std::move(script)) {
    if (script_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "adversary script is empty");
    }
}

Label GreedyEscapeAdversary::next(const IntVector& state, std::size_t) {
    Label best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t d = 0; d < part_.cells.size(); ++d) {
        std::size_t count = 0;
        for (auto k : part_.cells[d]) {
            const auto y = state + inst_.controls[k];
            if (inst_.safe.contains(y) && policy_.contains(y)) {
                ++count;
            }
        }
        if (count < best_count) {
            best_count = count;
            best = static_cast<Label>(d);
        }
    }
    return best;
}

Trajectory run(const Instance& inst, const Partition& part, const Policy& policy, Adversary& adversary,
               std::size_t steps, const RunOptions& options) {
    const auto label_of = partition_to_labeling(part, inst.controls.size());
    Trajectory traj;
    traj.states.reserve(steps + 1);
    traj.inputs.reserve(steps);
    traj.states.push_back(inst.x0);

    auto emit = [&](std::size_t t, const std::optional<Step>& input) {
        if (options.sink) {
            options.sink(t, traj.states[t], input);
        }
    };

    if (!inst.safe.contains(inst.x0)) {
        traj.safe = false;
        traj.first_violation = 0;
        emit(0, std::nullopt);
        return traj;
    }
    for (std::size_t t = 0; t < steps; ++t) {
        const IntVector x = traj.states[t];
        const Label d = adversary.next(x, t);
        const auto k = policy.action(x, d);
        if (!k || *k >= inst.controls.size() || label_of[*k] != d) {
            traj.safe = false;
            traj.first_violation = t;
            emit(t, std::nullopt);
            return traj;
        }
        const Step step{d, *k};
        emit(t, step);
        traj.inputs.push_back(step);
        traj.states.push_back(x + inst.controls[*k]);
        if (!inst.safe.contains(traj.states.back())) {
            traj.safe = false;
            traj.first_violation = t + 1;
            emit(t + 1, std::nullopt);
            return traj;
        }
    }
    emit(steps, std::nullopt);
    return traj;
}

std::string render_board(const Instance& inst, const Policy& policy, const IntVector& state) {
    if (inst.n > 2) {
        return "(board rendering needs n <= 2)\n";
    }
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& p : inst.safe.points()) {
        for (auto c : p.coords()) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    }
    for (auto c : state.coords()) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    --lo;
    ++hi;
    std::ostringstream out;
    auto cell = [&](const IntVector& p) {
        if (p == state) {
            return '@';
        }
        if (policy.contains(p)) {
            return 'o';
        }
        return inst.safe.contains(p) ? '.' : ' ';
    };
    if (inst.n == 1) {
        for (auto x = lo; x <= hi; ++x) {
            out << cell(IntVector{x});
        }
        out << '\n';
        return out.str();
    }
    for (auto y = hi; y >= lo; --y) {
        for (auto x = lo; x <= hi; ++x) {
            out << cell(IntVector{x, y}) << ' ';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace resil::sim
