#include <doctest.h>

#include "recolor/core_peel.hpp"
#include "recolor/independence.hpp"
#include "support.hpp"

using namespace recolor;
using namespace recolor::testing;

namespace {

// Colorability by plain recursion over all maximal independent subsets of
// each residual (no memo), with the core found by exhaustive subset search.
bool brute_colorable(const Hypergraph& h, std::uint32_t residual, std::uint32_t alpha, std::uint32_t beta) {
    if (alpha == 0) return brute_core(h, beta, residual).empty();
    bool any = false;
    for (std::uint32_t s = residual;; s = (s - 1) & residual) {
        if (brute_maximal(h, s, residual)) {
            any = true;
            if (!brute_colorable(h, residual & ~s, alpha - 1, beta)) return false;
        }
        if (s == 0) break;
    }
    REQUIRE(any);
    return true;
}

std::size_t brute_max_independent(const Hypergraph& h) {
    std::size_t best = 0;
    for (std::uint32_t s = 0; s < (1u << h.n()); ++s) {
        if (brute_independent(h, s)) best = std::max<std::size_t>(best, __builtin_popcount(s));
    }
    return best;
}

} // namespace

TEST_SUITE("independence") {
    TEST_CASE("extend_to_mis examples") {
        CHECK(extend_to_mis(edgeless(5), {1, 2, 3, 4, 5}, {}, MisStrategy::AscendingId, 0) == VertexList{1, 2, 3, 4, 5});
        auto e3 = Hypergraph::build(3, 3, {{1, 2, 3}});
        CHECK(extend_to_mis(e3, {1, 2, 3}, {}, MisStrategy::AscendingId, 0) == VertexList{1, 2});
        CHECK(extend_to_mis(path3(), {1, 2, 3}, {2}, MisStrategy::AscendingId, 0) == VertexList{2});
        CHECK_THROWS_AS(extend_to_mis(path3(), {1, 2, 3}, {1, 2}, MisStrategy::AscendingId, 0), PreconditionError);
        CHECK_THROWS_AS(extend_to_mis(path3(), {1, 2}, {3}, MisStrategy::AscendingId, 0), PreconditionError);
    }

    TEST_CASE("greedy_sequence examples") {
        auto e = greedy_sequence(edgeless(4), 2, MisStrategy::AscendingId, 0);
        REQUIRE(e.sets.size() == 2);
        CHECK(e.sets[0] == VertexList{1, 2, 3, 4});
        CHECK(e.sets[1].empty());
        CHECK(e.residual.empty());

        auto t3 = greedy_sequence(triangle(), 3, MisStrategy::AscendingId, 0);
        CHECK(t3.sets == std::vector<VertexList>{{1}, {2}, {3}});
        CHECK(t3.residual.empty());

        auto t2 = greedy_sequence(triangle(), 2, MisStrategy::AscendingId, 0);
        CHECK(t2.residual == VertexList{3});
        CHECK(greedy_sequence(triangle(), 0, MisStrategy::AscendingId, 0).residual == VertexList{1, 2, 3});
    }

    TEST_CASE("check_good_greedy examples") {
        CHECK(check_good_greedy(edgeless(3), Coloring({1, 1, 1}), 1, 1));
        CHECK_FALSE(check_good_greedy(triangle(), Coloring({1, 2, 3}), 1, 1));
        CHECK(check_good_greedy(triangle(), Coloring({1, 2, 3}), 2, 1));
        // Class 1 must be maximal: {1} in path 1-2-3 is not (3 could join).
        CHECK_FALSE(check_good_greedy(path3(), Coloring({1, 2, 3}), 1, 2));
        CHECK(check_good_greedy(path3(), Coloring({1, 2, 1}), 1, 1));
        // Residual may use at most beta colors.
        CHECK_FALSE(check_good_greedy(path3(), Coloring({2, 3, 4}), 0, 2));
        CHECK(check_good_greedy(path3(), Coloring({2, 3, 2}), 0, 2));
        CHECK_FALSE(check_good_greedy(k2(), Coloring({1, 1}), 1, 1));
    }

    TEST_CASE("exact colorability examples") {
        CHECK(is_alpha_beta_colorable_exact(edgeless(4), 1, 1).colorable);
        auto t11 = is_alpha_beta_colorable_exact(triangle(), 1, 1);
        CHECK_FALSE(t11.colorable);
        REQUIRE(t11.witness);
        CHECK(t11.witness->sequence.sets == std::vector<VertexList>{{1}});
        CHECK(t11.witness->sequence.residual == VertexList{2, 3});
        CHECK(t11.witness->core_vertices == VertexList{2, 3});
        CHECK(is_alpha_beta_colorable_exact(triangle(), 2, 1).colorable);
        CHECK_FALSE(is_alpha_beta_colorable_exact(triangle(), 0, 2).colorable);
        CHECK(is_alpha_beta_colorable_exact(triangle(), 0, 3).colorable);
        CHECK_THROWS_AS(is_alpha_beta_colorable_exact(edgeless(13), 1, 1), BudgetExceeded);
        CHECK_NOTHROW(is_alpha_beta_colorable_exact(edgeless(13), 1, 1, ExactLimits{13}));
    }

    TEST_CASE("exact certifier agrees with unmemoized brute force and its witnesses re-verify") {
        Rng rng(11);
        int colorable = 0, not_colorable = 0;
        for (int trial = 0; trial < 250; ++trial) {
            const std::uint32_t k = 2 + trial % 2;
            const std::uint32_t n = std::max<std::uint32_t>(k, 3 + static_cast<std::uint32_t>(rng() % 5));
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (2 * n + 1)), rng);
            const std::uint32_t alpha = static_cast<std::uint32_t>(rng() % 3);
            const std::uint32_t beta = 1 + static_cast<std::uint32_t>(rng() % 2);
            auto got = is_alpha_beta_colorable_exact(h, alpha, beta);
            CHECK(got.colorable == brute_colorable(h, (1u << n) - 1, alpha, beta));
            if (got.colorable) {
                ++colorable;
                continue;
            }
            ++not_colorable;
            REQUIRE(got.witness);
            const auto& w = *got.witness;
            REQUIRE(w.sequence.sets.size() == alpha);
            std::uint32_t residual = (1u << n) - 1;
            for (const auto& set : w.sequence.sets) {
                CHECK(brute_maximal(h, to_bits(set), residual));
                residual &= ~to_bits(set);
            }
            CHECK(from_bits(residual, n) == w.sequence.residual);
            CHECK(w.core_vertices == brute_core(h, beta, residual));
            CHECK_FALSE(w.core_vertices.empty());
        }
        CHECK(colorable > 20);
        CHECK(not_colorable > 20);
    }

    TEST_CASE("emitted maximal independent sets carry a maximality certificate") {
        Rng rng(3);
        for (int trial = 0; trial < 300; ++trial) {
            const std::uint32_t k = 2 + trial % 3;
            const std::uint32_t n = k + static_cast<std::uint32_t>(rng() % 12);
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (3 * n)), rng);
            const auto strategy = trial % 2 ? MisStrategy::SeededRandom : MisStrategy::AscendingId;
            auto seq = greedy_sequence(h, 1 + static_cast<std::uint32_t>(rng() % 4), strategy, rng());
            std::uint32_t residual = (1u << n) - 1;
            for (const auto& set : seq.sets) {
                CHECK(brute_maximal(h, to_bits(set), residual));
                CHECK(is_maximal_independent(h, from_bits(residual, n), set));
                residual &= ~to_bits(set);
            }
            CHECK(to_bits(seq.residual) == residual);
        }
    }

    TEST_CASE("enumerated maximal independent sets match brute force") {
        Rng rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint32_t k = 2 + trial % 2;
            const std::uint32_t n = k + static_cast<std::uint32_t>(rng() % 7);
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (2 * n)), rng);
            std::vector<VertexList> expected;
            const std::uint32_t all = (1u << n) - 1;
            for (std::uint32_t s = 0; s <= all; ++s) {
                if (brute_maximal(h, s, all)) expected.push_back(from_bits(s, n));
            }
            auto got = enumerate_maximal_independent_sets(h, h.vertices());
            std::sort(got.begin(), got.end());
            std::sort(expected.begin(), expected.end());
            CHECK(got == expected);
        }
    }

    TEST_CASE("reduction: removing a maximal independent set keeps colorability with alpha-1") {
        Rng rng(19);
        int checked = 0;
        for (int trial = 0; trial < 120; ++trial) {
            const std::uint32_t k = 2 + trial % 2;
            const std::uint32_t n = std::max<std::uint32_t>(k, 4 + static_cast<std::uint32_t>(rng() % 4));
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (2 * n)), rng);
            const std::uint32_t alpha = 1 + static_cast<std::uint32_t>(rng() % 3);
            const std::uint32_t beta = 1 + static_cast<std::uint32_t>(rng() % 2);
            if (!is_alpha_beta_colorable_exact(h, alpha, beta).colorable) continue;
            for (const VertexList& v1 : enumerate_maximal_independent_sets(h, h.vertices())) {
                VertexList rest;
                for (Vertex v = 1; v <= n; ++v) {
                    if (!std::binary_search(v1.begin(), v1.end(), v)) rest.push_back(v);
                }
                CHECK(is_alpha_beta_colorable_exact(h, rest, alpha - 1, beta).colorable);
                if (rest.size() >= k) {
                    auto sub = induced_subhypergraph(h, rest);
                    CHECK(is_alpha_beta_colorable_exact(sub.graph, alpha - 1, beta).colorable);
                }
                ++checked;
            }
        }
        CHECK(checked > 50);
    }

    TEST_CASE("color classes of proper colorings are independent") {
        Rng rng(23);
        for (int trial = 0; trial < 100; ++trial) {
            auto h = random_instance(7, 2 + trial % 2, 8, rng);
            for (const Coloring& c : brute_colorings(h, 3)) {
                for (Color cls = 1; cls <= 3; ++cls) {
                    VertexList members;
                    for (Vertex v = 1; v <= 7; ++v) {
                        if (c[v] == cls) members.push_back(v);
                    }
                    CHECK(is_independent(h, members));
                }
                break;
            }
        }
    }

    TEST_CASE("falsify_alpha_beta") {
        CHECK_FALSE(falsify_alpha_beta(edgeless(6), 1, 1, 5, 0));
        auto w = falsify_alpha_beta(triangle(), 1, 1, 10, 0);
        REQUIRE(w);
        CHECK(w->core_vertices.size() == 2);
        CHECK_THROWS(falsify_alpha_beta(triangle(), 1, 1, 0, 0));
    }

    TEST_CASE("falsify_alpha_beta on a desk-scale random graph is deterministic per seed") {
        auto h = generate_hnm(2000, 20000, 2, 4242);
        auto a = falsify_alpha_beta(h, 40, 30, 20, 99);
        auto b = falsify_alpha_beta(h, 40, 30, 20, 99);
        CHECK(a.has_value() == b.has_value());
        // Average degree 20: forty greedy layers leave a sparse residual with
        // no 30-core.
        CHECK_FALSE(a.has_value());
        // With too few layers the residual keeps a dense core.
        auto shallow = falsify_alpha_beta(h, 1, 10, 3, 99);
        REQUIRE(shallow);
        auto again = falsify_alpha_beta(h, 1, 10, 3, 99);
        CHECK(shallow->core_vertices == again->core_vertices);
    }

    TEST_CASE("max_independent_set_exact") {
        CHECK(max_independent_set_exact(edgeless(7)).size == 7);
        CHECK(max_independent_set_exact(triangle()).size == 1);
        auto e3 = Hypergraph::build(4, 3, {{1, 2, 3}});
        auto best = max_independent_set_exact(e3);
        CHECK(best.size == 3);
        CHECK(is_independent(e3, best.set));
        CHECK_THROWS_AS(max_independent_set_exact(edgeless(31)), BudgetExceeded);

        Rng rng(31);
        for (int trial = 0; trial < 150; ++trial) {
            const std::uint32_t k = 2 + trial % 3;
            const std::uint32_t n = k + static_cast<std::uint32_t>(rng() % 12);
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (3 * n)), rng);
            auto got = max_independent_set_exact(h);
            CHECK(got.size == brute_max_independent(h));
            CHECK(got.set.size() == got.size);
            CHECK(is_independent(h, got.set));
        }
        // Largest allowed size still finishes.
        CHECK(max_independent_set_exact(generate_hnm(30, 60, 2, 5)).size > 0);
    }
}
