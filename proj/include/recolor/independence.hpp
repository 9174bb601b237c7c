#pragma once

#include <optional>

#include "recolor/hypergraph.hpp"

namespace recolor {

enum class MisStrategy { AscendingId, SeededRandom };

/// Disjoint sets V_1..V_t, each maximal independent in what remains after
/// removing the earlier ones. Sets may be empty once the residual is empty.
struct MISequence {
    std::vector<VertexList> sets;
    VertexList residual;
};

/// A maximally independent sequence whose residual still has a beta-core.
struct ColorabilityWitness {
    MISequence sequence;
    VertexList core_vertices;
};

struct ColorabilityResult {
    bool colorable = true;
    std::optional<ColorabilityWitness> witness;
};

/// Caps on exhaustive searches. Anything larger is refused with
/// BudgetExceeded.
struct ExactLimits {
    std::uint32_t max_vertices = 12;
};

/// No edge lies entirely inside `set`.
bool is_independent(const Hypergraph& h, const VertexList& set);

/// `set` is independent, contained in `active`, and every other vertex of
/// `active` would complete an edge inside set + {v}.
bool is_maximal_independent(const Hypergraph& h, const VertexList& active, const VertexList& set);

VertexList extend_to_mis(const Hypergraph& h, const VertexList& active, const VertexList& seed_set,
                         MisStrategy strategy, std::uint64_t rng_seed);
VertexList extend_to_mis(const Hypergraph& h, const VertexList& active, const VertexList& seed_set,
                         MisStrategy strategy, Rng& rng);

/// Sequence of exactly t maximal independent sets peeled off `active`
/// (defaults to all of V). One RNG drives every level.
MISequence greedy_sequence(const Hypergraph& h, std::uint32_t t, MisStrategy strategy, std::uint64_t rng_seed);
MISequence greedy_sequence(const Hypergraph& h, const VertexList& active, std::uint32_t t, MisStrategy strategy,
                           std::uint64_t rng_seed);

/// Color classes 1..alpha form a maximally independent sequence, and the
/// vertices colored above alpha carry no beta-core and use at most beta
/// colors. Returns false for improper colorings.
bool check_good_greedy(const Hypergraph& h, const Coloring& coloring, std::uint32_t alpha, std::uint32_t beta);

/// All maximal independent sets of the sub-hypergraph induced by `active`.
std::vector<VertexList> enumerate_maximal_independent_sets(const Hypergraph& h, const VertexList& active,
                                                           ExactLimits limits = {});

/// Exhaustive (alpha, beta)-colorability over every maximally independent
/// sequence of length alpha inside `active`. Returns the first witness found.
ColorabilityResult is_alpha_beta_colorable_exact(const Hypergraph& h, std::uint32_t alpha, std::uint32_t beta,
                                                 ExactLimits limits = {});
ColorabilityResult is_alpha_beta_colorable_exact(const Hypergraph& h, const VertexList& active,
                                                 std::uint32_t alpha, std::uint32_t beta,
                                                 ExactLimits limits = {});

/// Random greedy probe: trial i uses seed mix_seed(rng_seed, i). A result of
/// nullopt is evidence of colorability, not proof.
std::optional<ColorabilityWitness> falsify_alpha_beta(const Hypergraph& h, std::uint32_t alpha, std::uint32_t beta,
                                                      std::uint32_t trials, std::uint64_t rng_seed);

struct IndependentSet {
    std::size_t size = 0;
    VertexList set;
};

/// Maximum independent set by branch and bound. Refuses n > max_vertices.
IndependentSet max_independent_set_exact(const Hypergraph& h, std::uint32_t max_vertices = 30);

} // namespace recolor
