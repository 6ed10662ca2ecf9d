#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "resil/graph.hpp"
#include "resil/rds.hpp"
#include "support.hpp"

using namespace resil;

namespace {

// Out-degree of x by direct membership tests, no adjacency involved.
std::size_t brute_degree(const std::vector<IntVector>& pts, const ControlSet& us, const IntVector& x) {
    std::size_t d = 0;
    for (const auto& u : us) {
        if (std::find(pts.begin(), pts.end(), x + u) != pts.end()) {
            ++d;
        }
    }
    return d;
}

// Largest subset of pts containing x0 with every out-degree >= t, found as
// the union of all such subsets (the family is closed under union).
std::optional<std::vector<IntVector>> brute_core(const std::vector<IntVector>& pts, const ControlSet& us,
                                                 std::size_t t, const IntVector& x0) {
    std::vector<IntVector> best;
    bool any = false;
    for (std::uint32_t mask = 1; mask < (1U << pts.size()); ++mask) {
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if ((mask >> i) & 1U) {
                sub.push_back(pts[i]);
            }
        }
        if (std::find(sub.begin(), sub.end(), x0) == sub.end()) {
            continue;
        }
        bool ok = true;
        for (const auto& x : sub) {
            ok = ok && brute_degree(sub, us, x) >= t;
        }
        if (ok) {
            any = true;
            for (const auto& x : sub) {
                if (std::find(best.begin(), best.end(), x) == best.end()) {
                    best.push_back(x);
                }
            }
        }
    }
    if (!any) {
        return std::nullopt;
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace

TEST_CASE("build_induced on the one-norm ball with king moves") {
    const auto inst = testkit::king_on_diamond();
    const auto g = build_induced(inst.safe.points(), inst.controls);
    CHECK(g.vertex_count() == 5);
    CHECK(g.min_out_degree() == 3);
    CHECK(g.out_degree(*g.index_of(IntVector{0, 0})) == 4);
    for (const auto& arm : {IntVector{1, 0}, IntVector{-1, 0}, IntVector{0, 1}, IntVector{0, -1}}) {
        CHECK(g.out_degree(*g.index_of(arm)) == 3);
    }
    CHECK(g.edge_count() == 16);
}

TEST_CASE("single vertex with a zero control has a self-loop") {
    const auto g = build_induced({IntVector{0, 0}}, ControlSet({IntVector{0, 0}}));
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 1);
    CHECK(g.min_out_degree() == 1);
    CHECK(g.out_edges(0).front().target == 0);
}

TEST_CASE("balanced core of length-2 codewords has the documented degrees") {
    const auto g = build_induced(rds::balanced_core(2), rds::codeword_alphabet(2));
    CHECK(g.vertex_count() == 9);
    CHECK(g.min_out_degree() == 2);
    for (const auto& x : {IntVector{2, 0}, IntVector{-2, 0}, IntVector{0, 2}, IntVector{0, -2}}) {
        CHECK(g.out_degree(*g.index_of(x)) == 2);
    }
    CHECK(g.out_degree(*g.index_of(IntVector{0, 0})) == 4);
    CHECK(g.out_degree(*g.index_of(IntVector{1, 1})) == 3);
}

TEST_CASE("adjacency matches direct membership tests") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = testkit::random_case(rng);
        const auto& pts = c.inst.safe.points();
        const auto g = build_induced(pts, c.inst.controls);
        std::size_t edges = 0;
        std::size_t mindeg = c.inst.controls.size();
        for (const auto& x : pts) {
            const auto d = brute_degree(pts, c.inst.controls, x);
            CHECK(g.out_degree(*g.index_of(x)) == d);
            edges += d;
            mindeg = std::min(mindeg, d);
        }
        CHECK(g.edge_count() == edges);
        CHECK(g.min_out_degree() == mindeg);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            std::size_t last = 0;
            bool first = true;
            for (const auto& e : g.out_edges(v)) {
                CHECK(g.vertex(e.target) == g.vertex(v) + c.inst.controls[e.control]);
                CHECK((first || e.control > last));
                last = e.control;
                first = false;
            }
        }
    }
}

TEST_CASE("peeling the unit box under vehicle controls") {
    const auto inst = testkit::vehicle(2, 1, 2);
    const auto& pts = inst.safe.points();
    const auto t3 = peel_to_min_degree(pts, inst.controls, 3, inst.x0);
    REQUIRE(t3);
    CHECK(t3->vertex_count() == 9);
    CHECK_FALSE(peel_to_min_degree(pts, inst.controls, 5, inst.x0));
    const auto t0 = peel_to_min_degree(pts, inst.controls, 0, inst.x0);
    REQUIRE(t0);
    CHECK(t0->vertices() == pts);
}

TEST_CASE("peeling returns the maximal core and ignores deletion order") {
    std::mt19937_64 rng(3);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial) {
        // Small explicit sets so that the subset oracle stays cheap.
        std::vector<IntVector> pts;
        std::bernoulli_distribution keep(0.7);
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
        std::sort(pts.begin(), pts.end());
        const auto x0 = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
        std::vector<IntVector> moves;
        for (std::int64_t a = -1; a <= 1; ++a) {
            for (std::int64_t b = -1; b <= 1; ++b) {
                if (keep(rng)) {
                    moves.push_back(IntVector{a, b});
                }
            }
        }
        if (moves.empty()) {
            continue;
        }
        const ControlSet us(moves);
        const auto t = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const auto got = peel_to_min_degree(pts, us, t, x0);
        const auto want = brute_core(pts, us, t, x0);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(got->vertices() == *want);
            CHECK(got->min_out_degree() >= t);
        }
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            std::vector<std::size_t> order(pts.size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            const auto again = peel_to_min_degree_ordered(pts, us, t, x0, order);
            REQUIRE(again.has_value() == got.has_value());
            if (got) {
                CHECK(again->vertices() == got->vertices());
            }
        }
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("dot export lists every vertex and edge") {
    const auto inst = testkit::vehicle(1, 1, 1);
    const auto g = build_induced(inst.safe.points(), inst.controls);
    const Labeling lab{{0, 0, 0}};
    const auto dot = to_dot(g, &lab);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '>')) == g.edge_count());
    CHECK(dot.find("color=") != std::string::npos);
}
