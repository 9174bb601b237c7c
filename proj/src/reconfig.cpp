#include "recolor/reconfig.hpp"

#include <algorithm>
#include <set>

#include "recolor/core_peel.hpp"

namespace recolor {

namespace {

// Some edge through x lying inside `scope` would be monochromatic in `color`
// if x took that color.
bool would_complete_mono(const Hypergraph& h, const Coloring& cur, Vertex x, Color color,
                         const std::vector<char>& scope) {
    for (EdgeIndex e : h.incident(x)) {
        const Edge& edge = h.edge(e);
        bool mono = true;
        for (Vertex u : edge) {
            if (u == x) continue;
            if (!scope[u] || cur[u] != color) {
                mono = false;
                break;
            }
        }
        if (mono) return true;
    }
    return false;
}

void require_palette(const Hypergraph& h, const Coloring& c, Color q, const char* name) {
    if (c.size() != h.n()) throw PreconditionError(std::string(name) + ": coloring length != n");
    for (Color col : c.values()) {
        if (col < 1 || col > q) {
            throw PreconditionError(std::string(name) + ": color " + std::to_string(col) + " outside 1.." +
                                    std::to_string(q));
        }
    }
    if (!is_proper(h, c)) throw PreconditionError(std::string(name) + ": coloring is not proper");
}

void require_budget(Color q, std::uint32_t alpha, std::uint32_t beta) {
    if (beta < 1) throw PreconditionError("beta must be >= 1");
    if (static_cast<std::uint64_t>(q) < static_cast<std::uint64_t>(alpha) + beta + 1) {
        throw PreconditionError("need q >= alpha+beta+1, got q=" + std::to_string(q) + " alpha=" +
                                std::to_string(alpha) + " beta=" + std::to_string(beta));
    }
}

// Accumulates steps while tracking the current coloring.
class PathBuilder {
public:
    PathBuilder(const Hypergraph& h, const Coloring& start, Color q, const PathOptions& opts)
        : h_(h), q_(q), opts_(opts), rng_(opts.seed) {
        path_.start = start;
        cur_ = start;
    }

    const Hypergraph& graph() const { return h_; }
    const Coloring& current() const { return cur_; }
    Color q() const { return q_; }
    const PathOptions& options() const { return opts_; }
    Rng& rng() { return rng_; }
    PathStats& stats() { return path_.stats; }
    std::size_t size() const { return path_.steps.size(); }

    void move(Vertex v, Color c) {
        if (cur_[v] == c) throw std::logic_error("internal: no-op recolor step");
        if (path_.steps.size() >= opts_.step_cap) {
            throw PathCapExceeded("path exceeds step cap of " + std::to_string(opts_.step_cap));
        }
        path_.steps.push_back({v, c});
        cur_.set(v, c);
    }

    void close_span(Phase phase, std::uint32_t depth, std::size_t begin) {
        if (size() > begin) path_.spans.push_back({phase, depth, begin, size()});
    }

    RecolorPath finish() && {
        path_.end = cur_;
        return std::move(path_);
    }

private:
    const Hypergraph& h_;
    Color q_;
    PathOptions opts_;
    Rng rng_;
    RecolorPath path_;
    Coloring cur_;
};

// Bridge from the builder's current coloring to `tau` across the coreless set
// `w`. The step list for the first i peeled vertices is rewritten into the
// list for i+1, parking v_{i+1} on a spare color whenever a pending move
// would close a monochromatic edge through it.
void core_bridge(PathBuilder& b, const VertexList& w, const Coloring& tau, std::uint32_t alpha, std::uint32_t beta,
                 std::uint32_t depth) {
    const Hypergraph& h = b.graph();
    PeelResult peel = beta_core(h, beta, w);
    if (!peel.coreless()) {
        throw PreconditionError("bridge set has a " + std::to_string(beta) + "-core of size " +
                                std::to_string(peel.core.size()));
    }
    const Coloring chi = b.current();
    const std::size_t cap = b.options().step_cap;

    // scope: V \ W plus the peeled prefix inserted so far.
    std::vector<char> scope(h.n() + 1, 1);
    scope[0] = 0;
    for (Vertex v : w) scope[v] = 0;

    std::vector<RecolorStep> sigma;
    for (Vertex v : peel.order) {
        scope[v] = 1;
        Coloring cur = chi;
        std::vector<RecolorStep> next;
        next.reserve(sigma.size() + 1);
        std::size_t detours = 0;
        for (const RecolorStep& step : sigma) {
            if (would_complete_mono(h, cur, step.vertex, step.new_color, scope)) {
                Color spare = 0;
                for (Color c = alpha + 1; c <= alpha + beta + 1; ++c) {
                    if (c == step.new_color || c == cur[v]) continue;
                    if (!would_complete_mono(h, cur, v, c, scope)) {
                        spare = c;
                        break;
                    }
                }
                if (spare == 0) throw std::logic_error("core bridge: no spare color for vertex " + std::to_string(v));
                next.push_back({v, spare});
                cur.set(v, spare);
                ++detours;
            }
            next.push_back(step);
            cur.set(step.vertex, step.new_color);
            if (next.size() > cap) {
                throw PathCapExceeded("core bridge exceeds step cap of " + std::to_string(cap));
            }
        }
        if (cur[v] != tau[v]) next.push_back({v, tau[v]});
        sigma = std::move(next);
        b.stats().core_level_detours.push_back(detours);
        b.stats().core_detours += detours;
    }

    const std::size_t begin = b.size();
    for (const RecolorStep& step : sigma) b.move(step.vertex, step.new_color);
    b.stats().core_moves += sigma.size();
    b.close_span(Phase::Core, depth, begin);
}

// Approach a good greedy coloring on `active`, whose complement already
// carries classes 1..depth. Returns the reached coloring.
Coloring approach_good_greedy(PathBuilder& b, const VertexList& active, std::uint32_t depth, std::uint32_t alpha,
                              std::uint32_t beta) {
    const Hypergraph& h = b.graph();
    const std::size_t begin = b.size();
    std::vector<char> residual = make_mask(h.n(), active);
    std::vector<std::uint32_t> recolors(h.n() + 1, 0);

    ColorabilityWitness witness;
    for (Color cls = 1; cls <= depth; ++cls) {
        VertexList fixed;
        for (Vertex v = 1; v <= h.n(); ++v) {
            if (!residual[v] && b.current()[v] == cls) fixed.push_back(v);
        }
        witness.sequence.sets.push_back(std::move(fixed));
    }

    for (Color cls = depth + 1; cls <= alpha; ++cls) {
        VertexList rest = mask_to_list(residual);
        VertexList seed;
        for (Vertex v : rest) {
            if (b.current()[v] == cls) seed.push_back(v);
        }
        VertexList layer = extend_to_mis(h, rest, seed, b.options().strategy, b.rng());
        for (Vertex v : layer) {
            if (b.current()[v] != cls) {
                b.move(v, cls);
                ++recolors[v];
            }
            residual[v] = 0;
        }
        witness.sequence.sets.push_back(std::move(layer));
    }
    b.stats().inter_moves += b.size() - begin;
    b.stats().max_inter_recolors =
        std::max(b.stats().max_inter_recolors, *std::max_element(recolors.begin(), recolors.end()));
    b.close_span(Phase::Inter, depth, begin);

    VertexList w = mask_to_list(residual);
    PeelResult peel = beta_core(h, beta, w);
    if (!peel.coreless()) {
        witness.sequence.residual = w;
        witness.core_vertices = peel.core;
        throw NotColorableEvidence("residual after " + std::to_string(alpha) + " maximal independent sets has a " +
                                       std::to_string(beta) + "-core of size " + std::to_string(peel.core.size()),
                                   std::move(witness));
    }

    std::vector<Color> palette;
    for (Color c = alpha + 1; c <= alpha + beta + 1; ++c) palette.push_back(c);
    Coloring on_w = color_coreless(h, beta, w, palette);
    Coloring target = b.current();
    for (Vertex v : w) target.set(v, on_w[v]);

    core_bridge(b, w, target, alpha, beta, depth);
    return target;
}

// Move between good greedy colorings; `active` is what remains after classes
// 1..depth have been fixed identically in both.
void bridge_good_greedy(PathBuilder& b, const VertexList& active, std::uint32_t depth, const Coloring& tau,
                        std::uint32_t alpha, std::uint32_t beta) {
    b.stats().final_depth = std::max(b.stats().final_depth, depth);
    if (depth == alpha) {
        core_bridge(b, active, tau, alpha, beta, depth);
        return;
    }
    const Color cls = depth + 1;

    VertexList rest;
    bool same_class = true;
    for (Vertex v : active) {
        if ((b.current()[v] == cls) != (tau[v] == cls)) same_class = false;
        if (tau[v] != cls) rest.push_back(v);
    }
    if (same_class) {
        bridge_good_greedy(b, rest, depth + 1, tau, alpha, beta);
        return;
    }

    std::vector<char> used(b.q() + 1, 0);
    for (Color c : b.current().values()) used[c] = 1;
    Color free = 0;
    for (Color c = depth + 1; c <= b.q(); ++c) {
        if (!used[c] && c != cls) {
            free = c;
            break;
        }
    }
    if (free == 0) throw std::logic_error("no color unused by the current coloring");

    const std::size_t begin = b.size();
    for (Vertex v : active) {
        if (b.current()[v] == cls) b.move(v, free);
    }
    for (Vertex v : active) {
        if (tau[v] == cls && b.current()[v] != cls) b.move(v, cls);
    }
    b.stats().final_moves += b.size() - begin;
    b.close_span(Phase::FinalSwap, depth, begin);

    approach_good_greedy(b, rest, depth + 1, alpha, beta);
    bridge_good_greedy(b, rest, depth + 1, tau, alpha, beta);
}

void append_reversed(PathBuilder& b, const RecolorPath& p) {
    std::vector<RecolorStep> back;
    back.reserve(p.steps.size());
    Coloring cur = p.start;
    for (const RecolorStep& s : p.steps) {
        back.push_back({s.vertex, cur[s.vertex]});
        cur.set(s.vertex, s.new_color);
    }
    const std::size_t begin = b.size();
    for (auto it = back.rbegin(); it != back.rend(); ++it) b.move(it->vertex, it->new_color);
    b.stats().reversed_moves += back.size();
    b.close_span(Phase::Reversed, 0, begin);
}

} // namespace

RecolorPath path_core(const Hypergraph& h, const VertexList& w, const Coloring& chi, const Coloring& tau,
                      std::uint32_t alpha, std::uint32_t beta, Color q, const PathOptions& opts) {
    require_budget(q, alpha, beta);
    require_palette(h, chi, q, "chi");
    require_palette(h, tau, q, "tau");
    auto in_w = make_mask(h.n(), w);
    std::set<Color> outside, extra;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (in_w[v]) continue;
        if (chi[v] != tau[v]) {
            throw PreconditionError("chi and tau differ at vertex " + std::to_string(v) + " outside W");
        }
        if (chi[v] > alpha) {
            throw PreconditionError("vertex " + std::to_string(v) + " outside W uses color " +
                                    std::to_string(chi[v]) + " > alpha");
        }
        outside.insert(tau[v]);
    }
    for (Vertex v : w) {
        if (!outside.contains(tau[v])) extra.insert(tau[v]);
    }
    if (extra.size() > beta) {
        throw PreconditionError("tau uses " + std::to_string(extra.size()) + " colors on W beyond those on V\\W");
    }
    PathBuilder b(h, chi, q, opts);
    core_bridge(b, w, tau, alpha, beta, 0);
    return std::move(b).finish();
}

GoodGreedyApproach path_to_good_greedy(const Hypergraph& h, const Coloring& chi, Color q, std::uint32_t alpha,
                                       std::uint32_t beta, const PathOptions& opts) {
    require_budget(q, alpha, beta);
    require_palette(h, chi, q, "chi");
    PathBuilder b(h, chi, q, opts);
    Coloring target = approach_good_greedy(b, h.vertices(), 0, alpha, beta);
    return {std::move(b).finish(), std::move(target)};
}

RecolorPath path_between_good_greedy(const Hypergraph& h, const Coloring& chi, const Coloring& tau, Color q,
                                     std::uint32_t alpha, std::uint32_t beta, const PathOptions& opts) {
    require_budget(q, alpha, beta);
    require_palette(h, chi, q, "chi");
    require_palette(h, tau, q, "tau");
    if (!check_good_greedy(h, chi, alpha, beta)) throw PreconditionError("chi is not a good greedy coloring");
    if (!check_good_greedy(h, tau, alpha, beta)) throw PreconditionError("tau is not a good greedy coloring");
    PathBuilder b(h, chi, q, opts);
    bridge_good_greedy(b, h.vertices(), 0, tau, alpha, beta);
    if (!(b.current() == tau)) throw std::logic_error("good greedy bridge missed its target");
    return std::move(b).finish();
}

RecolorPath connect(const Hypergraph& h, const Coloring& from, const Coloring& to, Color q, std::uint32_t alpha,
                    std::uint32_t beta, const PathOptions& opts) {
    require_budget(q, alpha, beta);
    require_palette(h, from, q, "from");
    require_palette(h, to, q, "to");

    PathBuilder back(h, to, q, opts);
    Coloring tau_to = approach_good_greedy(back, h.vertices(), 0, alpha, beta);
    RecolorPath to_side = std::move(back).finish();

    PathBuilder b(h, from, q, opts);
    approach_good_greedy(b, h.vertices(), 0, alpha, beta);
    bridge_good_greedy(b, h.vertices(), 0, tau_to, alpha, beta);
    append_reversed(b, to_side);

    PathStats& s = b.stats();
    s.inter_moves += to_side.stats.inter_moves;
    s.core_moves += to_side.stats.core_moves;
    s.core_detours += to_side.stats.core_detours;
    s.max_inter_recolors = std::max(s.max_inter_recolors, to_side.stats.max_inter_recolors);
    s.core_level_detours.insert(s.core_level_detours.end(), to_side.stats.core_level_detours.begin(),
                                to_side.stats.core_level_detours.end());
    if (!(b.current() == to)) throw std::logic_error("connect missed its target");
    return std::move(b).finish();
}

Coloring replay(const Coloring& start, const std::vector<RecolorStep>& steps) {
    Coloring cur = start;
    for (const RecolorStep& s : steps) cur.set(s.vertex, s.new_color);
    return cur;
}

PathVerdict verify_path(const Hypergraph& h, const Coloring& start, const std::vector<RecolorStep>& steps, Color q) {
    PathVerdict verdict;
    auto fail = [&](PathViolation kind, std::size_t step, std::string detail) {
        verdict.ok = false;
        verdict.violation = kind;
        verdict.step = step;
        verdict.detail = std::move(detail);
        return verdict;
    };
    if (start.size() != h.n()) return fail(PathViolation::BadStart, 0, "start coloring length != n");
    for (Color c : start.values()) {
        if (c < 1 || c > q) return fail(PathViolation::BadStart, 0, "start uses color outside 1..q");
    }
    if (!is_proper(h, start)) return fail(PathViolation::BadStart, 0, "start coloring is not proper");

    Coloring cur = start;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const RecolorStep& s = steps[i];
        if (s.vertex < 1 || s.vertex > h.n()) {
            return fail(PathViolation::VertexOutOfRange, i, "vertex " + std::to_string(s.vertex));
        }
        if (s.new_color < 1 || s.new_color > q) {
            return fail(PathViolation::ColorOutOfRange, i, "color " + std::to_string(s.new_color));
        }
        if (cur[s.vertex] == s.new_color) {
            return fail(PathViolation::NotSingleChange, i,
                        "vertex " + std::to_string(s.vertex) + " already has color " + std::to_string(s.new_color));
        }
        cur.set(s.vertex, s.new_color);
        for (EdgeIndex e : h.incident(s.vertex)) {
            const Edge& edge = h.edge(e);
            if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return cur[u] == s.new_color; })) {
                return fail(PathViolation::Improper, i, "edge " + std::to_string(e) + " monochromatic");
            }
        }
    }
    verdict.end = std::move(cur);
    return verdict;
}

PathVerdict verify_path(const Hypergraph& h, const RecolorPath& path, Color q) {
    return verify_path(h, path.start, path.steps, q);
}

const char* to_string(PathViolation v) {
    switch (v) {
        case PathViolation::None: return "none";
        case PathViolation::BadStart: return "bad-start";
        case PathViolation::VertexOutOfRange: return "vertex-out-of-range";
        case PathViolation::ColorOutOfRange: return "color-out-of-range";
        case PathViolation::NotSingleChange: return "not-single-change";
        case PathViolation::Improper: return "improper";
    }
    return "unknown";
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::Inter: return "inter";
        case Phase::Core: return "core";
        case Phase::FinalSwap: return "final-swap";
        case Phase::Reversed: return "reversed";
    }
    return "unknown";
}

} // namespace recolor
