#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "resil/game.hpp"
#include "resil/types.hpp"

namespace resil::sim {

/// Source of adversary labels d(t) in [0, m).
class Adversary {
  public:
    virtual ~Adversary() = default;
    virtual Label next(const IntVector& state, std::size_t t) = 0;
};

class ConstantAdversary final : public Adversary {
  public:
    explicit ConstantAdversary(Label d) : d_(d) {}
    Label next(const IntVector&, std::size_t) override { return d_; }

  private:
    Label d_;
};

class UniformAdversary final : public Adversary {
  public:
    UniformAdversary(int m, std::uint64_t seed) : rng_(seed), pick_(0, m - 1) {}
    Label next(const IntVector&, std::size_t) override { return pick_(rng_); }

  private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<int> pick_;
};

/// Replays a fixed label sequence, cycling when it runs out.
class ScriptedAdversary final : public Adversary {
  public:
    explicit ScriptedAdversary(std::vector<Label> script);
    Label next(const IntVector&, std::size_t t) override { return script_[t % script_.size()]; }

  private:
    std::vector<Label> script_;
};

/// Picks the label whose cell leaves the fewest successors that are both
/// safe and inside the policy domain; ties go to the smallest label.
class GreedyEscapeAdversary final : public Adversary {
  public:
    GreedyEscapeAdversary(const Instance& inst, const Partition& part, const Policy& policy)
        : inst_(inst), part_(part), policy_(policy) {}
    Label next(const IntVector& state, std::size_t t) override;

  private:
    const Instance& inst_;
    const Partition& part_;
    const Policy& policy_;
};

/// Delegates to a callback, e.g. one that reads labels from a terminal.
class CallbackAdversary final : public Adversary {
  public:
    using Fn = std::function<Label(const IntVector&, std::size_t)>;
    explicit CallbackAdversary(Fn fn) : fn_(std::move(fn)) {}
    Label next(const IntVector& state, std::size_t t) override { return fn_(state, t); }

  private:
    Fn fn_;
};

struct Step {
    Label d;
    std::size_t control;
};

struct Trajectory {
    std::vector<IntVector> states;
    std::vector<Step> inputs;  // inputs[t] moves states[t] to states[t + 1]
    bool safe = true;
    std::optional<std::size_t> first_violation;  // index into states
};

/// Invoked once per recorded state, with the input applied at that state
/// (absent for the final state).
using StateSink = std::function<void(std::size_t t, const IntVector& state, const std::optional<Step>& input)>;

struct RunOptions {
    StateSink sink;
};

/// Closed-loop replay of x(t+1) = x(t) + u(t) for `steps` steps. Stops at the
/// first state outside S, or at a state where the policy has no action for
/// the adversary's label or picks a control outside that label's cell (both
/// recorded as a violation at the current state).
Trajectory run(const Instance& inst, const Partition& part, const Policy& policy, Adversary& adversary,
               std::size_t steps, const RunOptions& options = {});

/// Text board for n <= 2 showing S, the policy domain and the current state.
std::string render_board(const Instance& inst, const Policy& policy, const IntVector& state);

}  // namespace resil::sim
