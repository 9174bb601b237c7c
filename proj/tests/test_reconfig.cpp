#include <doctest.h>

#include "recolor/core_peel.hpp"
#include "recolor/gamma_oracle.hpp"
#include "recolor/reconfig.hpp"
#include "support.hpp"

using namespace recolor;
using namespace recolor::testing;

namespace {

void check_sound(const Hypergraph& h, const RecolorPath& p, Color q, const Coloring& target) {
    auto verdict = verify_path(h, p, q);
    INFO("violation: " << to_string(verdict.violation) << " at step " << verdict.step << ": " << verdict.detail);
    REQUIRE(verdict.ok);
    CHECK(verdict.end == target);
    CHECK(p.end == target);
    CHECK(replay(p.start, p.steps) == target);
}

// Steps inside a span at depth d never touch colors 1..d, either as the old
// or the new color.
void check_color_discipline(const RecolorPath& p) {
    Coloring cur = p.start;
    std::vector<std::uint32_t> depth_of(p.steps.size(), 0);
    for (const PhaseSpan& s : p.spans) {
        for (std::size_t i = s.begin; i < s.end; ++i) depth_of[i] = s.depth;
    }
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& st = p.steps[i];
        CHECK(cur[st.vertex] > depth_of[i]);
        CHECK(st.new_color > depth_of[i]);
        cur.set(st.vertex, st.new_color);
    }
}

// Smallest alpha+beta (beta >= 1) that the exhaustive certifier accepts.
std::pair<std::uint32_t, std::uint32_t> certified_params(const Hypergraph& h) {
    for (std::uint32_t total = 1;; ++total) {
        for (std::uint32_t beta = 1; beta <= total; ++beta) {
            if (is_alpha_beta_colorable_exact(h, total - beta, beta).colorable) return {total - beta, beta};
        }
    }
}

} // namespace

TEST_SUITE("reconfig") {
    TEST_CASE("path_core examples") {
        auto same = path_core(k2(), {}, Coloring({1, 2}), Coloring({1, 2}), 2, 1, 4);
        CHECK(same.length() == 0);

        auto swap = path_core(k2(), {1, 2}, Coloring({1, 2}), Coloring({2, 1}), 0, 2, 3);
        CHECK(swap.steps == std::vector<RecolorStep>{{1, 3}, {2, 1}, {1, 2}});
        check_sound(k2(), swap, 3, Coloring({2, 1}));
        CHECK(gamma_distance(k2(), 3, Coloring({1, 2}), Coloring({2, 1})) == 3u);

        auto p = path_core(path3(), {1, 2, 3}, Coloring({1, 2, 1}), Coloring({2, 1, 2}), 0, 2, 3);
        check_sound(path3(), p, 3, Coloring({2, 1, 2}));
        auto oracle = gamma_distance(path3(), 3, Coloring({1, 2, 1}), Coloring({2, 1, 2}));
        REQUIRE(oracle);
        CHECK(p.length() >= *oracle);
    }

    TEST_CASE("path_core rejects violated preconditions") {
        auto h = path3();
        // q below alpha+beta+1.
        CHECK_THROWS_AS(path_core(h, {1, 2, 3}, Coloring({1, 2, 1}), Coloring({2, 1, 2}), 0, 2, 2), PreconditionError);
        // Disagreement outside W.
        CHECK_THROWS_AS(path_core(h, {2, 3}, Coloring({1, 2, 1}), Coloring({2, 1, 2}), 1, 1, 3), PreconditionError);
        // Outside W uses a color above alpha.
        CHECK_THROWS_AS(path_core(h, {2, 3}, Coloring({2, 1, 2}), Coloring({2, 3, 2}), 1, 1, 3), PreconditionError);
        // W carries a beta-core.
        CHECK_THROWS_AS(path_core(triangle(), {1, 2, 3}, Coloring({1, 2, 3}), Coloring({2, 1, 3}), 0, 2, 3),
                        PreconditionError);
        // Improper endpoint.
        CHECK_THROWS_AS(path_core(h, {1, 2, 3}, Coloring({1, 1, 2}), Coloring({2, 1, 2}), 0, 2, 3), PreconditionError);
        // tau spends more than beta fresh colors on W.
        CHECK_THROWS_AS(path_core(h, {1, 2, 3}, Coloring({1, 2, 1}), Coloring({1, 2, 3}), 0, 2, 4), PreconditionError);
    }

    TEST_CASE("path_to_good_greedy examples") {
        auto done = path_to_good_greedy(triangle(), Coloring({1, 2, 3}), 4, 2, 1);
        CHECK(done.path.length() == 0);
        CHECK(done.target == Coloring({1, 2, 3}));
        CHECK(check_good_greedy(triangle(), done.target, 2, 1));

        auto moved = path_to_good_greedy(triangle(), Coloring({3, 4, 1}), 4, 2, 1);
        check_sound(triangle(), moved.path, 4, moved.target);
        CHECK(check_good_greedy(triangle(), moved.target, 2, 1));

        try {
            path_to_good_greedy(triangle(), Coloring({1, 2, 3}), 3, 1, 1);
            FAIL("expected NotColorableEvidence");
        } catch (const NotColorableEvidence& e) {
            CHECK(e.witness().sequence.sets == std::vector<VertexList>{{1}});
            CHECK(e.witness().core_vertices == VertexList{2, 3});
        }
    }

    TEST_CASE("path_between_good_greedy examples") {
        auto h = triangle();
        CHECK(path_between_good_greedy(h, Coloring({1, 2, 3}), Coloring({1, 2, 3}), 4, 2, 1).length() == 0);
        auto p = path_between_good_greedy(h, Coloring({1, 2, 3}), Coloring({2, 1, 3}), 4, 2, 1);
        check_sound(h, p, 4, Coloring({2, 1, 3}));
        check_color_discipline(p);
        CHECK(p.stats.final_depth == 2);
        CHECK(gamma_distance(h, 4, Coloring({1, 2, 3}), Coloring({2, 1, 3})).has_value());
        CHECK_THROWS_AS(path_between_good_greedy(h, Coloring({1, 2, 3}), Coloring({1, 3, 4}), 4, 2, 1),
                        PreconditionError);
    }

    TEST_CASE("alpha = 0 delegates to the core bridge on coreless instances") {
        Rng rng(41);
        int done = 0;
        while (done < 60) {
            const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 2);
            const std::uint32_t n = std::max<std::uint32_t>(k, 3 + static_cast<std::uint32_t>(rng() % 6));
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (2 * n)), rng);
            const std::uint32_t beta = 1 + static_cast<std::uint32_t>(rng() % 3);
            if (!beta_core(h, beta).coreless()) continue;
            const Color q = beta + 1;
            auto all = enumerate_proper(h, q);
            std::vector<Coloring> good;
            for (const auto& c : all) {
                if (check_good_greedy(h, c, 0, beta)) good.push_back(c);
            }
            if (good.empty()) continue;
            ++done;
            const Coloring& a = good[rng() % good.size()];
            const Coloring& b = good[rng() % good.size()];
            auto p = path_between_good_greedy(h, a, b, q, 0, beta);
            check_sound(h, p, q, b);
            auto d = gamma_distance(h, q, a, b);
            REQUIRE(d);
            CHECK(p.length() >= *d);
        }
    }

    TEST_CASE("connect examples") {
        auto loop = connect(k2(), Coloring({1, 2}), Coloring({1, 2}), 3, 0, 2);
        check_sound(k2(), loop, 3, Coloring({1, 2}));

        auto swap = connect(k2(), Coloring({1, 2}), Coloring({2, 1}), 3, 0, 2);
        check_sound(k2(), swap, 3, Coloring({2, 1}));
        CHECK(swap.length() >= 3);
    }

    TEST_CASE("connect on random 3-uniform instances with certified parameters") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto h = generate_hnm(8, 8, 3, seed);
            auto [alpha, beta] = certified_params(h);
            const Color q = alpha + beta + 1;
            auto all = enumerate_proper(h, q);
            REQUIRE_FALSE(all.empty());
            Rng rng(seed);
            for (int pair = 0; pair < 50; ++pair) {
                const Coloring& a = all[rng() % all.size()];
                const Coloring& b = all[rng() % all.size()];
                auto p = connect(h, a, b, q, alpha, beta);
                check_sound(h, p, q, b);
                check_color_discipline(p);
                CHECK(p.stats.max_inter_recolors <= 2);
            }
        }
    }

    TEST_CASE("certified colorability implies a connected reconfiguration graph and successful connect") {
        Rng rng(97);
        int instances = 0;
        for (int trial = 0; trial < 40; ++trial) {
            const std::uint32_t k = 2 + trial % 2;
            const std::uint32_t n = std::max<std::uint32_t>(k, 4 + static_cast<std::uint32_t>(rng() % 3));
            auto h = random_instance(n, k, static_cast<std::uint32_t>(rng() % (2 * n)), rng);
            for (std::uint32_t beta = 1; beta <= 3; ++beta) {
                for (std::uint32_t alpha = 0; alpha + beta <= 3; ++alpha) {
                    if (!is_alpha_beta_colorable_exact(h, alpha, beta).colorable) continue;
                    const Color q = alpha + beta + 1;
                    GammaOptions no_diameter;
                    no_diameter.diameter_work = 0;
                    CHECK(gamma_stats(h, q, no_diameter).connected);
                    auto all = enumerate_proper(h, q);
                    const std::size_t stride = std::max<std::size_t>(1, all.size() / 12);
                    for (std::size_t i = 0; i < all.size(); i += stride) {
                        for (std::size_t j = 0; j < all.size(); j += stride) {
                            auto p = connect(h, all[i], all[j], q, alpha, beta);
                            check_sound(h, p, q, all[j]);
                        }
                    }
                    ++instances;
                }
            }
        }
        CHECK(instances > 20);
    }

    TEST_CASE("connect on larger sparse instances stays sound") {
        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const std::uint32_t k = 2 + trial % 3;
            const std::uint32_t n = 60 + static_cast<std::uint32_t>(rng() % 60);
            auto h = generate_hnm(n, n, k, rng());
            std::uint32_t beta = 1;
            while (!beta_core(h, beta).coreless()) ++beta;
            const std::uint32_t alpha = static_cast<std::uint32_t>(rng() % 3);
            const Color q = alpha + beta + 1 + static_cast<Color>(rng() % 2);
            std::vector<Color> low, high;
            for (Color c = 1; c <= beta + 1; ++c) {
                low.push_back(c);
                high.push_back(q + 1 - c);
            }
            Coloring c1 = color_coreless(h, beta, h.vertices(), low);
            Coloring c2 = color_coreless(h, beta, h.vertices(), high);
            REQUIRE(is_proper(h, c1));
            REQUIRE(is_proper(h, c2));
            auto p = connect(h, c1, c2, q, alpha, beta);
            check_sound(h, p, q, c2);
            check_color_discipline(p);
        }
    }

    TEST_CASE("step cap is enforced") {
        PathOptions opts;
        opts.step_cap = 2;
        CHECK_THROWS_AS(path_core(k2(), {1, 2}, Coloring({1, 2}), Coloring({2, 1}), 0, 2, 3, opts), PathCapExceeded);
    }

    TEST_CASE("verify_path verdicts") {
        auto h = path3();
        CHECK(verify_path(h, Coloring({1, 2, 1}), {}, 3).ok);
        auto noop = verify_path(h, Coloring({1, 2, 1}), {{1, 3}, {1, 3}}, 3);
        CHECK_FALSE(noop.ok);
        CHECK(noop.violation == PathViolation::NotSingleChange);
        CHECK(noop.step == 1);
        auto improper = verify_path(h, Coloring({1, 2, 1}), {{2, 1}}, 3);
        CHECK(improper.violation == PathViolation::Improper);
        CHECK(verify_path(h, Coloring({1, 2, 1}), {{2, 4}}, 3).violation == PathViolation::ColorOutOfRange);
        CHECK(verify_path(h, Coloring({1, 2, 1}), {{4, 3}}, 3).violation == PathViolation::VertexOutOfRange);
        CHECK(verify_path(h, Coloring({1, 1, 2}), {}, 3).violation == PathViolation::BadStart);
        CHECK(verify_path(h, Coloring({1, 2}), {}, 3).violation == PathViolation::BadStart);
        CHECK(verify_path(h, Coloring({1, 5, 1}), {}, 3).violation == PathViolation::BadStart);
    }
}
