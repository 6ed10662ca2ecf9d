#include <doctest.h>

#include <random>

#include "resil/game.hpp"
#include "resil/oracle.hpp"
#include "resil/simulator.hpp"
#include "support.hpp"

using namespace resil;

namespace {

// Greatest closed subset of S by enumerating all subsets (|S| <= 12).
std::vector<IntVector> brute_winning(const Instance& inst, const Partition& part) {
    const auto& pts = inst.safe.points();
    std::vector<char> best(pts.size(), 0);
    for (std::uint32_t mask = 1; mask < (1U << pts.size()); ++mask) {
        auto in = [&](const IntVector& y) {
            const auto i = inst.safe.index_of(y);
            return i >= 0 && ((mask >> i) & 1U) != 0;
        };
        bool closed = true;
        for (std::size_t v = 0; v < pts.size() && closed; ++v) {
            if (((mask >> v) & 1U) == 0) {
                continue;
            }
            for (const auto& cell : part.cells) {
                bool escape = false;
                for (auto k : cell) {
                    escape = escape || in(pts[v] + inst.controls[k]);
                }
                closed = closed && escape;
            }
        }
        if (closed) {
            for (std::size_t v = 0; v < pts.size(); ++v) {
                best[v] = best[v] || ((mask >> v) & 1U);
            }
        }
    }
    std::vector<IntVector> out;
    for (std::size_t v = 0; v < pts.size(); ++v) {
        if (best[v]) {
            out.push_back(pts[v]);
        }
    }
    return out;
}

void check_policy_invariant(const Instance& inst, const Partition& part, const GameResult& r) {
    for (std::size_t i = 0; i < r.policy.size(); ++i) {
        const auto& x = r.policy.states()[i];
        for (Label d = 0; d < inst.m; ++d) {
            const int k = r.policy.at(i, d);
            REQUIRE(k >= 0);
            const auto& cell = part.cells[static_cast<std::size_t>(d)];
            CHECK(std::find(cell.begin(), cell.end(), static_cast<std::size_t>(k)) != cell.end());
            CHECK(r.policy.contains(x + inst.controls[static_cast<std::size_t>(k)]));
        }
    }
}

}  // namespace

TEST_CASE("fixed partition that cannot be defended") {
    const auto inst = testkit::vehicle(2, 1, 2);
    const auto part = testkit::east_north_split(inst);
    const auto naive = solve_rpcp(inst, part);
    const auto fast = counter_based_attractor(inst, part);
    CHECK_FALSE(naive.solvable);
    CHECK_FALSE(fast.solvable);
    CHECK(naive.winning_set().empty());
    CHECK(fast.winning_set().empty());
}

TEST_CASE("fixed partition with east-west and north-south-stay cells") {
    const auto inst = testkit::vehicle(2, 1, 2);
    const auto part = testkit::axis_split(inst);
    for (const auto& r : {solve_rpcp(inst, part), counter_based_attractor(inst, part)}) {
        CHECK(r.solvable);
        CHECK(r.policy.contains(IntVector{0, 0}));
        CHECK(r.policy.contains(IntVector{1, 0}));
        check_policy_invariant(inst, part, r);
        // Smallest control index among the qualifying ones.
        CHECK(r.policy.action(IntVector{0, 0}, 0) == std::optional<std::size_t>(0));  // e1
        CHECK(r.policy.action(IntVector{1, 0}, 0) == std::optional<std::size_t>(1));  // -e1
        CHECK(r.policy.action(IntVector{0, 0}, 1) == std::optional<std::size_t>(2));  // e2
        CHECK(r.policy.action(IntVector{0, 1}, 1) == std::optional<std::size_t>(3));  // -e2
    }
    CHECK(solve_rpcp(inst, part).winning_set() == brute_winning(inst, part));
}

TEST_CASE("a lone zero control keeps every safe state") {
    Instance inst;
    inst.n = 2;
    inst.x0 = IntVector{1, -1};
    inst.controls = ControlSet({IntVector{0, 0}});
    inst.m = 1;
    inst.safe = SafeSet::inf_ball(2, 2);
    inst = validate_instance(inst);
    const Partition part{{{0}}};
    for (const auto& r : {solve_rpcp(inst, part), counter_based_attractor(inst, part)}) {
        CHECK(r.solvable);
        CHECK(r.winning_set() == inst.safe.points());
        for (const auto& x : inst.safe.points()) {
            CHECK(r.policy.action(x, 0) == std::optional<std::size_t>(0));
        }
    }
}

TEST_CASE("an empty cell leaves the controller without a move") {
    const auto inst = testkit::vehicle(2, 1, 2);
    const Partition part{{{0, 1, 2, 3, 4}, {}}};
    for (const auto& r : {solve_rpcp(inst, part), counter_based_attractor(inst, part)}) {
        CHECK_FALSE(r.solvable);
        CHECK(r.winning_set().empty());
    }
}

TEST_CASE("partitions with the wrong shape are rejected") {
    const auto inst = testkit::vehicle(2, 1, 2);
    CHECK(testkit::code_of([&] { (void)solve_rpcp(inst, Partition{{{0, 1, 2, 3, 4}}}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(testkit::code_of([&] { (void)counter_based_attractor(inst, Partition{{{0, 1, 2}, {3}}}); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("naive fixpoint converges within |S| rounds and matches subset enumeration") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<IntVector> pts;
        std::bernoulli_distribution keep(0.75);
        for (std::int64_t a = -1; a <= 1; ++a) {
            for (std::int64_t b = -1; b <= 2; ++b) {
                if (keep(rng)) {
                    pts.push_back(IntVector{a, b});
                }
            }
        }
        if (pts.empty()) {
            continue;
        }
        auto c = testkit::random_case(rng);
        c.inst.safe = SafeSet::explicit_points(2, pts);
        c.inst.x0 = c.inst.safe.points().front();
        const auto naive = solve_rpcp(c.inst, c.part);
        CHECK(naive.iterations <= c.inst.safe.size() + 1);
        CHECK(naive.winning_set() == brute_winning(c.inst, c.part));
    }
}

TEST_CASE("naive, counter and game-tree solvers agree on random instances") {
    std::mt19937_64 rng(2024);
    int solvable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = testkit::random_case(rng);
        const auto naive = solve_rpcp(c.inst, c.part);
        const auto fast = counter_based_attractor(c.inst, c.part);
        REQUIRE(naive.winning_set() == fast.winning_set());
        CHECK(naive.solvable == fast.solvable);
        for (std::size_t i = 0; i < naive.policy.size(); ++i) {
            for (Label d = 0; d < c.inst.m; ++d) {
                CHECK(naive.policy.at(i, d) == fast.policy.at(i, d));
            }
        }
        check_policy_invariant(c.inst, c.part, fast);
        const auto depth = c.inst.safe.size() + 1;
        CHECK(oracle::game_tree_rpcp(c.inst, c.part, depth) == fast.solvable);
        for (const auto& x : c.inst.safe.points()) {
            CHECK(oracle::game_tree_wins_from(c.inst, c.part, x, depth) == fast.policy.contains(x));
        }
        solvable += fast.solvable ? 1 : 0;
    }
    // Both verdicts must be exercised.
    CHECK(solvable > 10);
    CHECK(solvable < 190);
}

TEST_CASE("winning policies never leave the winning set under random labels") {
    std::mt19937_64 rng(5);
    std::vector<testkit::RandomCase> cases;
    {
        auto inst = testkit::vehicle(2, 1, 2);
        auto part = testkit::axis_split(inst);
        cases.push_back({inst, partition_to_labeling(part, inst.controls.size()), part});
    }
    while (cases.size() < 4) {
        auto c = testkit::random_case(rng);
        if (counter_based_attractor(c.inst, c.part).solvable) {
            cases.push_back(std::move(c));
        }
    }
    for (const auto& c : cases) {
        const auto r = counter_based_attractor(c.inst, c.part);
        for (int seq = 0; seq < 1000; ++seq) {
            const auto& start = r.winning_set()[static_cast<std::size_t>(seq) % r.winning_set().size()];
            Instance from = c.inst;
            from.x0 = start;
            sim::UniformAdversary adv(c.inst.m, static_cast<std::uint64_t>(seq));
            const auto traj = sim::run(from, c.part, r.policy, adv, 1000);
            REQUIRE(traj.safe);
            for (const auto& x : traj.states) {
                REQUIRE(r.policy.contains(x));
            }
        }
    }
}

TEST_CASE("check_policy flags each kind of defect") {
    const auto inst = testkit::vehicle(2, 1, 2);
    const auto part = testkit::axis_split(inst);
    const auto good = counter_based_attractor(inst, part).policy;
    CHECK(check_policy(inst, part, good).ok);

    auto wrong_cell = good;
    wrong_cell.set(*wrong_cell.index_of(IntVector{0, 0}), 0, 2);  // e2 is not in cell 1
    CHECK_FALSE(check_policy(inst, part, wrong_cell).ok);

    auto missing = good;
    missing.set(0, 1, Policy::kNoAction);
    CHECK_FALSE(check_policy(inst, part, missing).ok);

    auto leaves = good;
    leaves.set(*leaves.index_of(IntVector{1, 0}), 0, 0);  // e1 from the east edge
    const auto result = check_policy(inst, part, leaves);
    CHECK_FALSE(result.ok);
    CHECK(result.problem.find("leaves") != std::string::npos);

    const Policy no_x0({IntVector{1, 1}}, 2);
    CHECK_FALSE(check_policy(inst, part, no_x0).ok);
}
