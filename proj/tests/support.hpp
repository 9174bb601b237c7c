#pragma once

// Small fixtures and brute-force oracles shared by the test binaries. The
// oracles here deliberately avoid the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "recolor/hypergraph.hpp"

namespace recolor::testing {

inline Hypergraph k2() { return Hypergraph::build(2, 2, {{1, 2}}); }
inline Hypergraph triangle() { return Hypergraph::build(3, 2, {{1, 2}, {2, 3}, {1, 3}}); }
inline Hypergraph path3() { return Hypergraph::build(3, 2, {{1, 2}, {2, 3}}); }
inline Hypergraph edgeless(std::uint32_t n, std::uint32_t k = 2) { return Hypergraph::build(n, k, {}); }

inline Hypergraph complete(std::uint32_t n, std::uint32_t k) {
    std::vector<Edge> edges;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (static_cast<std::uint32_t>(__builtin_popcount(s)) != k) continue;
        Edge e;
        for (Vertex v = 1; v <= n; ++v) {
            if (s & (1u << (v - 1))) e.push_back(v);
        }
        edges.push_back(e);
    }
    return Hypergraph::build(n, k, edges);
}

// Edges fully inside the vertex subset `mask` (bit v-1 <-> vertex v).
inline std::uint32_t edges_inside(const Hypergraph& h, std::uint32_t mask) {
    std::uint32_t count = 0;
    for (const Edge& e : h.edges()) {
        bool inside = std::all_of(e.begin(), e.end(), [&](Vertex v) { return mask & (1u << (v - 1)); });
        count += inside;
    }
    return count;
}

inline std::uint32_t inside_degree(const Hypergraph& h, Vertex v, std::uint32_t mask) {
    std::uint32_t count = 0;
    for (const Edge& e : h.edges()) {
        if (std::find(e.begin(), e.end(), v) == e.end()) continue;
        count += std::all_of(e.begin(), e.end(), [&](Vertex u) { return mask & (1u << (u - 1)); });
    }
    return count;
}

inline std::uint32_t to_bits(const VertexList& vs) {
    std::uint32_t m = 0;
    for (Vertex v : vs) m |= 1u << (v - 1);
    return m;
}

inline VertexList from_bits(std::uint32_t m, std::uint32_t n) {
    VertexList out;
    for (Vertex v = 1; v <= n; ++v) {
        if (m & (1u << (v - 1))) out.push_back(v);
    }
    return out;
}

// Exhaustive beta-core: the largest subset of `active` whose members all
// have inside-degree >= beta. Also checks that it is the unique maximal one.
inline VertexList brute_core(const Hypergraph& h, std::uint32_t beta, std::uint32_t active) {
    std::uint32_t best = 0;
    std::vector<std::uint32_t> good;
    for (std::uint32_t s = active;; s = (s - 1) & active) {
        bool ok = s != 0;
        for (Vertex v = 1; ok && v <= h.n(); ++v) {
            if ((s & (1u << (v - 1))) && inside_degree(h, v, s) < beta) ok = false;
        }
        if (ok) {
            good.push_back(s);
            if (__builtin_popcount(s) > __builtin_popcount(best)) best = s;
        }
        if (s == 0) break;
    }
    for (std::uint32_t s : good) {
        if ((s & best) != s) throw std::logic_error("brute_core: maximal core not unique");
    }
    return from_bits(best, h.n());
}

inline bool brute_independent(const Hypergraph& h, std::uint32_t s) { return edges_inside(h, s) == 0; }

// Every vertex of `residual` outside s completes some edge inside s + {v}.
inline bool brute_maximal(const Hypergraph& h, std::uint32_t s, std::uint32_t residual) {
    if (!brute_independent(h, s) || (s & ~residual)) return false;
    for (Vertex v = 1; v <= h.n(); ++v) {
        std::uint32_t b = 1u << (v - 1);
        if (!(residual & b) || (s & b)) continue;
        if (edges_inside(h, s | b) == 0) return false;
    }
    return true;
}

// Random k-uniform hypergraph with m edges, independent of generate_hnm.
inline Hypergraph random_instance(std::uint32_t n, std::uint32_t k, std::uint32_t m, Rng& rng) {
    std::set<Edge> edges;
    const auto cap = binomial(n, k);
    m = static_cast<std::uint32_t>(std::min<std::uint64_t>(m, cap));
    std::uniform_int_distribution<Vertex> pick(1, n);
    while (edges.size() < m) {
        std::set<Vertex> e;
        while (e.size() < k) e.insert(pick(rng));
        edges.insert(Edge(e.begin(), e.end()));
    }
    return Hypergraph::build(n, k, std::vector<Edge>(edges.begin(), edges.end()));
}

// Proper colorings by plain odometer enumeration with a full properness
// check; independent of the gamma oracle's backtracking.
inline std::vector<Coloring> brute_colorings(const Hypergraph& h, Color q) {
    std::vector<Coloring> out;
    std::vector<Color> c(h.n(), 1);
    while (true) {
        Coloring col(c);
        bool ok = true;
        for (const Edge& e : h.edges()) {
            std::set<Color> seen;
            for (Vertex v : e) seen.insert(col[v]);
            if (seen.size() < 2) ok = false;
        }
        if (ok) out.push_back(col);
        std::size_t i = h.n();
        while (i > 0 && c[i - 1] == q) c[--i] = 1;
        if (i == 0) break;
        ++c[i - 1];
    }
    return out;
}

} // namespace recolor::testing
