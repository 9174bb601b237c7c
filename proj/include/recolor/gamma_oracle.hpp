#pragma once

#include <functional>
#include <optional>

#include "recolor/hypergraph.hpp"

namespace recolor {

/// Brute-force view of the reconfiguration graph: proper q-colorings joined
/// when they differ at exactly one vertex. Only for tiny instances.
struct GammaOptions {
    std::uint64_t max_colorings = 10'000'000;  // refuse when q^n exceeds this
    // Diameter needs one BFS per vertex of the largest component; skipped when
    // size^2 exceeds this.
    std::uint64_t diameter_work = 400'000'000;
};

struct GammaStats {
    std::uint64_t num_colorings = 0;
    std::uint64_t num_components = 0;
    std::vector<std::uint64_t> component_sizes;  // descending
    std::optional<std::uint32_t> diameter;       // of the largest component
    bool diameter_skipped = false;
    bool connected = true;
};

/// Visits every proper coloring once, in lexicographic order (vertex 1 most
/// significant). Returns the count.
std::uint64_t for_each_proper(const Hypergraph& h, Color q, const std::function<void(const Coloring&)>& visit,
                              GammaOptions opts = {});
std::vector<Coloring> enumerate_proper(const Hypergraph& h, Color q, GammaOptions opts = {});

GammaStats gamma_stats(const Hypergraph& h, Color q, GammaOptions opts = {});

/// Hop distance in the reconfiguration graph, nullopt when unreachable.
std::optional<std::uint32_t> gamma_distance(const Hypergraph& h, Color q, const Coloring& from, const Coloring& to,
                                            GammaOptions opts = {});

} // namespace recolor
