#include "recolor/core_peel.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace recolor {

PeelResult beta_core(const Hypergraph& h, std::uint32_t beta, const VertexList& active) {
    if (beta < 1) throw std::invalid_argument("beta must be >= 1");
    const auto in_active = make_mask(h.n(), active);

    // alive[e]: edge still fully inside the surviving vertex set.
    std::vector<char> alive(h.m(), 0);
    std::vector<std::uint32_t> deg(h.n() + 1, 0);
    for (EdgeIndex e = 0; e < h.m(); ++e) {
        const Edge& edge = h.edge(e);
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return in_active[v]; })) {
            alive[e] = 1;
            for (Vertex v : edge) ++deg[v];
        }
    }

    std::vector<char> present = in_active;
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> removable;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (present[v] && deg[v] < beta) removable.push(v);
    }

    VertexList removed;
    while (!removable.empty()) {
        Vertex v = removable.top();
        removable.pop();
        if (!present[v]) continue;
        present[v] = 0;
        removed.push_back(v);
        for (EdgeIndex e : h.incident(v)) {
            if (!alive[e]) continue;
            alive[e] = 0;
            for (Vertex u : h.edge(e)) {
                if (u == v || !present[u]) continue;
                if (deg[u]-- == beta) removable.push(u);
            }
        }
    }

    PeelResult out;
    out.core = mask_to_list(present);
    out.order.assign(removed.rbegin(), removed.rend());
    return out;
}

PeelResult beta_core(const Hypergraph& h, std::uint32_t beta) {
    return beta_core(h, beta, h.vertices());
}

bool certify_peel_order(const Hypergraph& h, std::uint32_t beta, const VertexList& order) {
    std::vector<char> prefix(h.n() + 1, 0);
    for (Vertex v : order) {
        prefix[v] = 1;
        std::uint32_t inside = 0;
        for (EdgeIndex e : h.incident(v)) {
            const Edge& edge = h.edge(e);
            inside += std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return prefix[u]; });
        }
        if (inside + 1 > beta) return false;
    }
    return true;
}

std::vector<Color> blocked_colors(const Hypergraph& h, Vertex v, const Coloring& partial) {
    if (partial.size() != h.n()) throw std::invalid_argument("blocked_colors: coloring length != n");
    if (partial[v] != kUncolored) {
        throw std::invalid_argument("blocked_colors: vertex " + std::to_string(v) + " is already colored");
    }
    std::vector<Color> out;
    for (EdgeIndex e : h.incident(v)) {
        Color shared = kUncolored;
        bool blocks = true;
        for (Vertex u : h.edge(e)) {
            if (u == v) continue;
            Color c = partial[u];
            if (c == kUncolored || (shared != kUncolored && c != shared)) {
                blocks = false;
                break;
            }
            shared = c;
        }
        if (blocks) out.push_back(shared);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Coloring color_coreless(const Hypergraph& h, std::uint32_t beta, const VertexList& active,
                        const std::vector<Color>& palette) {
    if (palette.size() < beta) {
        throw PreconditionError("palette has " + std::to_string(palette.size()) + " colors, need beta=" +
                                std::to_string(beta));
    }
    PeelResult peel = beta_core(h, beta, active);
    if (!peel.coreless()) {
        throw PreconditionError("active set has a non-empty " + std::to_string(beta) + "-core of size " +
                                std::to_string(peel.core.size()));
    }
    Coloring out(h.n());
    for (Vertex v : peel.order) {
        auto blocked = blocked_colors(h, v, out);
        auto it = std::find_if(palette.begin(), palette.end(), [&](Color c) {
            return !std::binary_search(blocked.begin(), blocked.end(), c);
        });
        if (it == palette.end()) throw std::logic_error("color_coreless: every palette color blocked");
        out.set(v, *it);
    }
    return out;
}

} // namespace recolor
