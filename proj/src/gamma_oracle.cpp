#include "recolor/gamma_oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace recolor {

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

std::uint64_t checked_space(const Hypergraph& h, Color q, const GammaOptions& opts) {
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    std::uint64_t space = 1;
    for (std::uint32_t i = 0; i < h.n(); ++i) {
        if (space > opts.max_colorings / q) {
            throw BudgetExceeded("q^n exceeds the enumeration budget of " + std::to_string(opts.max_colorings));
        }
        space *= q;
    }
    return space;
}

// Proper colorings stored as mixed-radix codes with an O(1) code -> index
// table over the whole q^n space.
class ColoringSpace {
public:
    ColoringSpace(const Hypergraph& h, Color q, const GammaOptions& opts) : h_(h), q_(q) {
        const std::uint64_t space = checked_space(h, q, opts);
        place_.assign(h.n() + 1, 1);
        for (Vertex v = h.n(); v >= 1; --v) place_[v - 1] = v == h.n() ? 1 : place_[v] * q;
        index_.assign(space, kAbsent);
        for_each_proper(h, q, [&](const Coloring& c) {
            std::uint64_t code = encode(c);
            index_[code] = static_cast<std::uint32_t>(codes_.size());
            codes_.push_back(code);
        }, opts);
    }

    std::size_t size() const { return codes_.size(); }

    std::uint64_t encode(const Coloring& c) const {
        std::uint64_t code = 0;
        for (Vertex v = 1; v <= h_.n(); ++v) code += (c[v] - 1) * place_[v - 1];
        return code;
    }

    std::uint32_t index_of(const Coloring& c) const { return index_[encode(c)]; }

    // Calls fn(j) for every coloring j one recoloring away from coloring i.
    template <typename Fn>
    void for_each_neighbor(std::uint32_t i, Fn&& fn) const {
        const std::uint64_t code = codes_[i];
        Coloring c(h_.n());
        for (Vertex v = 1; v <= h_.n(); ++v) c.set(v, static_cast<Color>((code / place_[v - 1]) % q_) + 1);
        std::vector<char> blocked(q_ + 1);
        for (Vertex v = 1; v <= h_.n(); ++v) {
            std::fill(blocked.begin(), blocked.end(), 0);
            for (EdgeIndex e : h_.incident(v)) {
                Color shared = 0;
                bool same = true;
                for (Vertex u : h_.edge(e)) {
                    if (u == v) continue;
                    if (shared == 0) shared = c[u];
                    else if (c[u] != shared) {
                        same = false;
                        break;
                    }
                }
                if (same) blocked[shared] = 1;
            }
            const Color own = c[v];
            for (Color col = 1; col <= q_; ++col) {
                if (col == own || blocked[col]) continue;
                std::uint64_t next = code + (static_cast<std::int64_t>(col) - own) * static_cast<std::int64_t>(place_[v - 1]);
                fn(index_[next]);
            }
        }
    }

    // BFS distances from `source`; kAbsent where unreachable.
    std::vector<std::uint32_t> distances(std::uint32_t source) const {
        std::vector<std::uint32_t> dist(size(), kAbsent);
        std::deque<std::uint32_t> queue{source};
        dist[source] = 0;
        while (!queue.empty()) {
            std::uint32_t x = queue.front();
            queue.pop_front();
            for_each_neighbor(x, [&](std::uint32_t y) {
                if (dist[y] == kAbsent) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            });
        }
        return dist;
    }

private:
    const Hypergraph& h_;
    Color q_;
    std::vector<std::uint64_t> place_;
    std::vector<std::uint32_t> index_;
    std::vector<std::uint64_t> codes_;
};

} // namespace

std::uint64_t for_each_proper(const Hypergraph& h, Color q, const std::function<void(const Coloring&)>& visit,
                              GammaOptions opts) {
    checked_space(h, q, opts);
    // closing[v]: edges whose largest vertex is v, checkable once v is set.
    std::vector<std::vector<EdgeIndex>> closing(h.n() + 1);
    for (EdgeIndex e = 0; e < h.m(); ++e) closing[h.edge(e).back()].push_back(e);

    Coloring c(h.n(), 1);
    std::uint64_t count = 0;
    auto ok_at = [&](Vertex v) {
        for (EdgeIndex e : closing[v]) {
            const Edge& edge = h.edge(e);
            if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return c[u] == c[v]; })) return false;
        }
        return true;
    };
    // Iterative backtracking over vertices 1..n.
    Vertex v = 1;
    c.set(1, 0);
    while (v >= 1) {
        if (c[v] == q) {
            c.set(v, 0);
            --v;
            continue;
        }
        c.set(v, c[v] + 1);
        if (!ok_at(v)) continue;
        if (v == h.n()) {
            ++count;
            visit(c);
        } else {
            ++v;
            c.set(v, 0);
        }
    }
    return count;
}

std::vector<Coloring> enumerate_proper(const Hypergraph& h, Color q, GammaOptions opts) {
    std::vector<Coloring> out;
    for_each_proper(h, q, [&](const Coloring& c) { out.push_back(c); }, opts);
    return out;
}

GammaStats gamma_stats(const Hypergraph& h, Color q, GammaOptions opts) {
    ColoringSpace space(h, q, opts);
    GammaStats stats;
    stats.num_colorings = space.size();

    std::vector<std::uint32_t> component(space.size(), kAbsent);
    std::vector<std::uint64_t> sizes;
    for (std::uint32_t s = 0; s < space.size(); ++s) {
        if (component[s] != kAbsent) continue;
        const auto id = static_cast<std::uint32_t>(sizes.size());
        std::uint64_t size = 0;
        std::deque<std::uint32_t> queue{s};
        component[s] = id;
        while (!queue.empty()) {
            std::uint32_t x = queue.front();
            queue.pop_front();
            ++size;
            space.for_each_neighbor(x, [&](std::uint32_t y) {
                if (component[y] == kAbsent) {
                    component[y] = id;
                    queue.push_back(y);
                }
            });
        }
        sizes.push_back(size);
    }
    stats.num_components = sizes.size();
    stats.connected = sizes.size() <= 1;
    stats.component_sizes = sizes;
    std::sort(stats.component_sizes.begin(), stats.component_sizes.end(), std::greater<>());

    if (sizes.empty()) return stats;
    const auto largest =
        static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    const std::uint64_t n_largest = sizes[largest];
    if (n_largest > 0 && n_largest > opts.diameter_work / n_largest) {
        stats.diameter_skipped = true;
        return stats;
    }
    // Adjacency of the largest component in CSR form, then BFS from each vertex.
    std::vector<std::uint32_t> local(space.size(), kAbsent), members;
    for (std::uint32_t s = 0; s < space.size(); ++s) {
        if (component[s] == largest) {
            local[s] = static_cast<std::uint32_t>(members.size());
            members.push_back(s);
        }
    }
    std::vector<std::uint64_t> offset{0};
    std::vector<std::uint32_t> adj;
    for (std::uint32_t s : members) {
        space.for_each_neighbor(s, [&](std::uint32_t y) { adj.push_back(local[y]); });
        offset.push_back(adj.size());
    }
    std::uint32_t diameter = 0;
    std::vector<std::uint32_t> dist(members.size()), queue(members.size());
    for (std::uint32_t src = 0; src < members.size(); ++src) {
        std::fill(dist.begin(), dist.end(), kAbsent);
        dist[src] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = src;
        while (head < tail) {
            const std::uint32_t x = queue[head++];
            for (std::uint64_t i = offset[x]; i < offset[x + 1]; ++i) {
                if (dist[adj[i]] == kAbsent) {
                    dist[adj[i]] = dist[x] + 1;
                    queue[tail++] = adj[i];
                }
            }
        }
        diameter = std::max(diameter, dist[queue[tail - 1]]);
    }
    stats.diameter = diameter;
    return stats;
}

std::optional<std::uint32_t> gamma_distance(const Hypergraph& h, Color q, const Coloring& from, const Coloring& to,
                                            GammaOptions opts) {
    for (const Coloring* c : {&from, &to}) {
        if (c->size() != h.n()) throw std::invalid_argument("gamma_distance: coloring length != n");
        for (Color col : c->values()) {
            if (col < 1 || col > q) throw std::invalid_argument("gamma_distance: color outside 1..q");
        }
        if (!is_proper(h, *c)) throw std::invalid_argument("gamma_distance: coloring is not proper");
    }
    ColoringSpace space(h, q, opts);
    auto dist = space.distances(space.index_of(from));
    std::uint32_t d = dist[space.index_of(to)];
    if (d == kAbsent) return std::nullopt;
    return d;
}

} // namespace recolor
