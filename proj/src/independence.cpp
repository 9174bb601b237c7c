#include "recolor/independence.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "recolor/core_peel.hpp"

namespace recolor {

namespace {

bool edge_inside(const Edge& e, const std::vector<char>& mask) {
    return std::all_of(e.begin(), e.end(), [&](Vertex v) { return mask[v]; });
}

// True iff adding v to the set marked by `in_set` completes an edge.
bool completes_edge(const Hypergraph& h, Vertex v, const std::vector<char>& in_set) {
    for (EdgeIndex e : h.incident(v)) {
        const Edge& edge = h.edge(e);
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return u == v || in_set[u]; })) return true;
    }
    return false;
}

using Mask = std::uint64_t;

Mask bit(Vertex v) { return Mask{1} << (v - 1); }

Mask to_mask(const VertexList& vs) {
    Mask m = 0;
    for (Vertex v : vs) m |= bit(v);
    return m;
}

VertexList from_mask(Mask m) {
    VertexList out;
    while (m) {
        out.push_back(static_cast<Vertex>(std::countr_zero(m)) + 1);
        m &= m - 1;
    }
    return out;
}

// Bitmask view of the edges lying inside an active set, for exhaustive search
// on small instances.
struct MaskGraph {
    std::uint32_t n = 0;
    std::vector<Mask> edges;
    std::vector<std::vector<Mask>> through;  // through[v]: edges containing v

    MaskGraph(const Hypergraph& h, Mask active) : n(h.n()), through(h.n() + 1) {
        for (const Edge& e : h.edges()) {
            Mask em = to_mask(e);
            if ((em & active) != em) continue;
            edges.push_back(em);
            for (Vertex v : e) through[v].push_back(em);
        }
    }

    bool independent(Mask s) const {
        return std::none_of(edges.begin(), edges.end(), [&](Mask e) { return (e & s) == e; });
    }

    bool maximal_in(Mask s, Mask residual) const {
        for (Mask rest = residual & ~s; rest; rest &= rest - 1) {
            Vertex v = static_cast<Vertex>(std::countr_zero(rest)) + 1;
            Mask grown = s | bit(v);
            bool blocked = std::any_of(through[v].begin(), through[v].end(),
                                       [&](Mask e) { return (e & grown) == e; });
            if (!blocked) return false;
        }
        return true;
    }

    std::vector<Mask> maximal_sets(Mask residual) const {
        std::vector<Mask> out;
        // Enumerate every submask of the residual, the empty set included.
        Mask s = residual;
        while (true) {
            if (independent(s) && maximal_in(s, residual)) out.push_back(s);
            if (s == 0) break;
            s = (s - 1) & residual;
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

void require_small(const Hypergraph& h, ExactLimits limits) {
    if (h.n() > limits.max_vertices || h.n() > 63) {
        throw BudgetExceeded("exhaustive search refused: n=" + std::to_string(h.n()) + " exceeds cap " +
                             std::to_string(std::min<std::uint32_t>(limits.max_vertices, 63)));
    }
}

struct SequenceSearch {
    const Hypergraph& h;
    const MaskGraph& g;
    std::uint32_t beta;
    std::set<std::pair<Mask, std::uint32_t>> cleared;  // (residual, remaining) with no witness below
    std::vector<Mask> chosen;
    std::optional<ColorabilityWitness> witness;

    bool run(Mask residual, std::uint32_t remaining) {
        if (remaining == 0 || residual == 0) {
            VertexList rest = from_mask(residual);
            PeelResult peel = beta_core(h, beta, rest);
            if (peel.coreless()) return false;
            ColorabilityWitness w;
            for (Mask s : chosen) w.sequence.sets.push_back(from_mask(s));
            w.sequence.sets.resize(chosen.size() + remaining);
            w.sequence.residual = std::move(rest);
            w.core_vertices = std::move(peel.core);
            witness = std::move(w);
            return true;
        }
        if (cleared.contains({residual, remaining})) return false;
        for (Mask s : g.maximal_sets(residual)) {
            chosen.push_back(s);
            if (run(residual & ~s, remaining - 1)) return true;
            chosen.pop_back();
        }
        cleared.insert({residual, remaining});
        return false;
    }
};

} // namespace

bool is_independent(const Hypergraph& h, const VertexList& set) {
    auto mask = make_mask(h.n(), set);
    return std::none_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) { return edge_inside(e, mask); });
}

bool is_maximal_independent(const Hypergraph& h, const VertexList& active, const VertexList& set) {
    auto in_active = make_mask(h.n(), active);
    auto in_set = make_mask(h.n(), set);
    for (Vertex v : set) {
        if (!in_active[v]) return false;
    }
    if (!is_independent(h, set)) return false;
    for (Vertex v : active) {
        if (!in_set[v] && !completes_edge(h, v, in_set)) return false;
    }
    return true;
}

VertexList extend_to_mis(const Hypergraph& h, const VertexList& active, const VertexList& seed_set,
                         MisStrategy strategy, Rng& rng) {
    auto in_active = make_mask(h.n(), active);
    auto in_set = make_mask(h.n(), seed_set);
    for (Vertex v : seed_set) {
        if (!in_active[v]) throw PreconditionError("seed vertex " + std::to_string(v) + " not in active set");
    }
    if (!is_independent(h, seed_set)) throw PreconditionError("seed set is not independent");

    VertexList candidates;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (in_active[v] && !in_set[v]) candidates.push_back(v);
    }
    if (strategy == MisStrategy::SeededRandom) std::shuffle(candidates.begin(), candidates.end(), rng);
    for (Vertex v : candidates) {
        if (!completes_edge(h, v, in_set)) in_set[v] = 1;
    }
    return mask_to_list(in_set);
}

VertexList extend_to_mis(const Hypergraph& h, const VertexList& active, const VertexList& seed_set,
                         MisStrategy strategy, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    return extend_to_mis(h, active, seed_set, strategy, rng);
}

MISequence greedy_sequence(const Hypergraph& h, const VertexList& active, std::uint32_t t, MisStrategy strategy,
                           std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    MISequence seq;
    auto residual = make_mask(h.n(), active);
    for (std::uint32_t j = 0; j < t; ++j) {
        VertexList set = extend_to_mis(h, mask_to_list(residual), {}, strategy, rng);
        for (Vertex v : set) residual[v] = 0;
        seq.sets.push_back(std::move(set));
    }
    seq.residual = mask_to_list(residual);
    return seq;
}

MISequence greedy_sequence(const Hypergraph& h, std::uint32_t t, MisStrategy strategy, std::uint64_t rng_seed) {
    return greedy_sequence(h, h.vertices(), t, strategy, rng_seed);
}

bool check_good_greedy(const Hypergraph& h, const Coloring& coloring, std::uint32_t alpha, std::uint32_t beta) {
    if (!is_proper(h, coloring)) return false;
    std::vector<char> residual(h.n() + 1, 1);
    residual[0] = 0;
    for (Color cls = 1; cls <= alpha; ++cls) {
        VertexList members;
        for (Vertex v = 1; v <= h.n(); ++v) {
            if (coloring[v] == cls) members.push_back(v);
        }
        if (!is_maximal_independent(h, mask_to_list(residual), members)) return false;
        for (Vertex v : members) residual[v] = 0;
    }
    VertexList rest = mask_to_list(residual);
    std::set<Color> used;
    for (Vertex v : rest) used.insert(coloring[v]);
    if (used.size() > beta) return false;
    return beta_core(h, beta, rest).coreless();
}

std::vector<VertexList> enumerate_maximal_independent_sets(const Hypergraph& h, const VertexList& active,
                                                           ExactLimits limits) {
    require_small(h, limits);
    Mask act = to_mask(active);
    MaskGraph g(h, act);
    std::vector<VertexList> out;
    for (Mask s : g.maximal_sets(act)) out.push_back(from_mask(s));
    return out;
}

ColorabilityResult is_alpha_beta_colorable_exact(const Hypergraph& h, const VertexList& active,
                                                 std::uint32_t alpha, std::uint32_t beta, ExactLimits limits) {
    require_small(h, limits);
    if (beta < 1) throw std::invalid_argument("beta must be >= 1");
    Mask act = to_mask(active);
    MaskGraph g(h, act);
    SequenceSearch search{h, g, beta, {}, {}, {}};
    ColorabilityResult result;
    if (search.run(act, alpha)) {
        result.colorable = false;
        result.witness = std::move(search.witness);
    }
    return result;
}

ColorabilityResult is_alpha_beta_colorable_exact(const Hypergraph& h, std::uint32_t alpha, std::uint32_t beta,
                                                 ExactLimits limits) {
    return is_alpha_beta_colorable_exact(h, h.vertices(), alpha, beta, limits);
}

std::optional<ColorabilityWitness> falsify_alpha_beta(const Hypergraph& h, std::uint32_t alpha, std::uint32_t beta,
                                                      std::uint32_t trials, std::uint64_t rng_seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (std::uint32_t i = 0; i < trials; ++i) {
        MISequence seq = greedy_sequence(h, alpha, MisStrategy::SeededRandom, mix_seed(rng_seed, i));
        PeelResult peel = beta_core(h, beta, seq.residual);
        if (!peel.coreless()) return ColorabilityWitness{std::move(seq), std::move(peel.core)};
    }
    return std::nullopt;
}

namespace {

struct MisBranchAndBound {
    std::vector<std::vector<Mask>> partners;  // partners[v]: e \ {v} for each edge e through v
    Mask best = 0;
    int best_size = -1;

    bool addable(Vertex v, Mask s) const {
        return std::none_of(partners[v].begin(), partners[v].end(), [&](Mask rest) { return (rest & s) == rest; });
    }

    void search(Mask s, Mask candidates) {
        const int size = std::popcount(s);
        if (size + std::popcount(candidates) <= best_size) return;
        if (candidates == 0) {
            best = s;
            best_size = size;
            return;
        }
        Vertex v = static_cast<Vertex>(std::countr_zero(candidates)) + 1;
        Mask rest = candidates & ~bit(v);
        Mask with = s | bit(v);
        Mask still = 0;
        for (Mask c = rest; c; c &= c - 1) {
            Vertex u = static_cast<Vertex>(std::countr_zero(c)) + 1;
            if (addable(u, with)) still |= bit(u);
        }
        search(with, still);
        search(s, rest);
    }
};

} // namespace

IndependentSet max_independent_set_exact(const Hypergraph& h, std::uint32_t max_vertices) {
    if (h.n() > max_vertices || h.n() > 63) {
        throw BudgetExceeded("max_independent_set_exact refused: n=" + std::to_string(h.n()) + " exceeds cap " +
                             std::to_string(max_vertices));
    }
    MisBranchAndBound bb;
    bb.partners.resize(h.n() + 1);
    for (const Edge& e : h.edges()) {
        Mask em = to_mask(e);
        for (Vertex v : e) bb.partners[v].push_back(em & ~bit(v));
    }
    Mask all = h.n() == 64 ? ~Mask{0} : (Mask{1} << h.n()) - 1;
    bb.search(0, all);
    return {static_cast<std::size_t>(bb.best_size), from_mask(bb.best)};
}

} // namespace recolor
