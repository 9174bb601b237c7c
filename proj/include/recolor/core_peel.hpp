#pragma once

#include "recolor/hypergraph.hpp"

namespace recolor {

/// Result of peeling `active` down to its beta-core.
///
/// `order` lists the peeled (non-core) vertices so that each vertex lies in at
/// most beta-1 edges contained in its prefix of `order`. It is the reverse of
/// the removal sequence.
struct PeelResult {
    VertexList core;
    VertexList order;

    bool coreless() const noexcept { return core.empty(); }
};

/// Beta-core of the sub-hypergraph induced by `active` (edges fully inside
/// `active` only). Among removable vertices the smallest id is peeled first.
PeelResult beta_core(const Hypergraph& h, std::uint32_t beta, const VertexList& active);
PeelResult beta_core(const Hypergraph& h, std::uint32_t beta);

/// Checks that every vertex of `order` lies in at most beta-1 edges contained
/// in its prefix.
bool certify_peel_order(const Hypergraph& h, std::uint32_t beta, const VertexList& order);

/// Colors c such that some edge through v has all of its other vertices
/// colored c in `partial`. Sorted ascending.
std::vector<Color> blocked_colors(const Hypergraph& h, Vertex v, const Coloring& partial);

/// First-fit coloring of a coreless `active` set along its peel order, using
/// palette colors only. Vertices outside `active` are left uncolored (0).
/// Throws PreconditionError if `active` has a beta-core or the palette holds
/// fewer than beta colors.
Coloring color_coreless(const Hypergraph& h, std::uint32_t beta, const VertexList& active,
                        const std::vector<Color>& palette);

} // namespace recolor
