#include "recolor/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace recolor {

namespace {

// Above this many candidate k-sets the generators stop enumerating them.
constexpr std::uint64_t kEnumerationThreshold = 2'000'000;

void require_shape(std::uint32_t n, std::uint32_t k) {
    if (k < 2 || k > n) {
        throw BuildError(BuildErrorKind::BadParameters,
                         "need 2 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
}

// Calls fn(edge) for every k-subset of 1..n in lexicographic order.
template <typename Fn>
void for_each_k_subset(std::uint32_t n, std::uint32_t k, Fn&& fn) {
    Edge comb(k);
    for (std::uint32_t i = 0; i < k; ++i) comb[i] = i + 1;
    while (true) {
        fn(comb);
        std::int64_t i = static_cast<std::int64_t>(k) - 1;
        while (i >= 0 && comb[i] == n - k + 1 + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) return;
        ++comb[i];
        for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

Edge random_k_set(std::uint32_t n, std::uint32_t k, Rng& rng) {
    std::uniform_int_distribution<Vertex> pick(1, n);
    Edge e;
    e.reserve(k);
    while (e.size() < k) {
        Vertex v = pick(rng);
        if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    return e;
}

// m distinct uniform k-sets. Rejection sampling with a seen-set; when m is a
// large fraction of a small universe, select from the enumerated universe.
std::vector<Edge> sample_distinct(std::uint32_t n, std::uint32_t k, std::uint64_t m, Rng& rng) {
    const std::uint64_t total = binomial(n, k);
    std::vector<Edge> out;
    if (total <= kEnumerationThreshold && 2 * m > total) {
        std::vector<Edge> all;
        all.reserve(total);
        for_each_k_subset(n, k, [&](const Edge& e) { all.push_back(e); });
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::uint64_t> pick(i, total - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        all.resize(m);
        return all;
    }
    std::set<Edge> seen;
    out.reserve(m);
    while (out.size() < m) {
        Edge e = random_k_set(n, k, rng);
        if (seen.insert(e).second) out.push_back(std::move(e));
    }
    return out;
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kMax) return kMax;
    }
    return static_cast<std::uint64_t>(r);
}

Hypergraph Hypergraph::build(std::uint32_t n, std::uint32_t k, std::vector<Edge> edges) {
    require_shape(n, k);
    for (auto& e : edges) {
        if (e.size() != k) {
            throw BuildError(BuildErrorKind::WrongArity,
                             "edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
        }
        for (Vertex v : e) {
            if (v < 1 || v > n) {
                throw BuildError(BuildErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " outside 1.." +
                                                                       std::to_string(n));
            }
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw BuildError(BuildErrorKind::RepeatedVertex, "edge repeats a vertex");
        }
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        std::ostringstream os;
        os << "duplicate edge {";
        for (std::size_t i = 0; i < dup->size(); ++i) os << (i ? "," : "") << (*dup)[i];
        os << "}";
        throw BuildError(BuildErrorKind::DuplicateEdge, os.str());
    }

    Hypergraph h;
    h.n_ = n;
    h.k_ = k;
    h.edges_ = std::move(edges);
    h.incidence_.assign(n, {});
    for (EdgeIndex e = 0; e < h.edges_.size(); ++e) {
        for (Vertex v : h.edges_[e]) h.incidence_[v - 1].push_back(e);
    }
    return h;
}

VertexList Hypergraph::vertices() const {
    VertexList vs(n_);
    for (Vertex v = 1; v <= n_; ++v) vs[v - 1] = v;
    return vs;
}

Color Coloring::max_color() const {
    return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

std::ostream& operator<<(std::ostream& os, const Coloring& c) {
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c.values()[i];
    return os << ")";
}

Hypergraph generate_hnm(std::uint32_t n, std::uint64_t m, std::uint32_t k, std::uint64_t seed) {
    require_shape(n, k);
    if (m > binomial(n, k)) {
        throw BuildError(BuildErrorKind::BadParameters,
                         "m=" + std::to_string(m) + " exceeds C(n,k)=" + std::to_string(binomial(n, k)));
    }
    Rng rng(seed);
    return Hypergraph::build(n, k, sample_distinct(n, k, m, rng));
}

Hypergraph generate_hnp(std::uint32_t n, double p, std::uint32_t k, std::uint64_t seed) {
    require_shape(n, k);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw BuildError(BuildErrorKind::BadParameters, "p must lie in [0,1]");
    }
    Rng rng(seed);
    const std::uint64_t total = binomial(n, k);
    std::vector<Edge> edges;
    if (total <= kEnumerationThreshold) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for_each_k_subset(n, k, [&](const Edge& e) {
            if (coin(rng) < p) edges.push_back(e);
        });
    } else {
        std::binomial_distribution<std::uint64_t> count(total, p);
        edges = sample_distinct(n, k, count(rng), rng);
    }
    return Hypergraph::build(n, k, std::move(edges));
}

bool is_proper(const Hypergraph& h, const Coloring& c) {
    if (c.size() != h.n()) {
        throw std::invalid_argument("coloring length " + std::to_string(c.size()) + " != n=" +
                                    std::to_string(h.n()));
    }
    for (Color col : c.values()) {
        if (col == kUncolored) throw std::invalid_argument("coloring has an uncolored vertex");
    }
    for (const Edge& e : h.edges()) {
        Color first = c[e[0]];
        bool mono = std::all_of(e.begin() + 1, e.end(), [&](Vertex v) { return c[v] == first; });
        if (mono) return false;
    }
    return true;
}

bool is_proper_on(const Hypergraph& h, const Coloring& c, const std::vector<char>& mask) {
    for (const Edge& e : h.edges()) {
        if (!std::all_of(e.begin(), e.end(), [&](Vertex v) { return mask[v]; })) continue;
        Color first = c[e[0]];
        if (std::all_of(e.begin() + 1, e.end(), [&](Vertex v) { return c[v] == first; })) return false;
    }
    return true;
}

std::size_t hamming(const Coloring& a, const Coloring& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming: coloring lengths differ");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.values()[i] != b.values()[i];
    return d;
}

std::vector<char> make_mask(std::uint32_t n, const VertexList& vs) {
    std::vector<char> mask(n + 1, 0);
    for (Vertex v : vs) {
        if (v < 1 || v > n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
        mask[v] = 1;
    }
    return mask;
}

VertexList mask_to_list(const std::vector<char>& mask) {
    VertexList out;
    for (Vertex v = 1; v < mask.size(); ++v) {
        if (mask[v]) out.push_back(v);
    }
    return out;
}

InducedHypergraph induced_subhypergraph(const Hypergraph& h, const VertexList& keep) {
    auto mask = make_mask(h.n(), keep);
    VertexList old_ids = mask_to_list(mask);
    std::vector<Vertex> new_id(h.n() + 1, 0);
    for (std::size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<Vertex>(i + 1);
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        if (!std::all_of(e.begin(), e.end(), [&](Vertex v) { return mask[v]; })) continue;
        Edge mapped;
        for (Vertex v : e) mapped.push_back(new_id[v]);
        edges.push_back(std::move(mapped));
    }
    auto n = static_cast<std::uint32_t>(old_ids.size());
    if (n < h.k()) {
        throw std::invalid_argument("induced sub-hypergraph needs at least k vertices");
    }
    return {Hypergraph::build(n, h.k(), std::move(edges)), std::move(old_ids)};
}

Hypergraph read_hypergraph(std::istream& in) {
    std::uint64_t n = 0, k = 0, m = 0;
    if (!(in >> n >> k >> m)) throw std::runtime_error("hypergraph: missing header \"n k m\"");
    std::vector<Edge> edges(m, Edge(k));
    for (auto& e : edges) {
        for (auto& v : e) {
            std::int64_t raw = 0;
            if (!(in >> raw)) throw std::runtime_error("hypergraph: truncated edge list");
            if (raw < 1 || raw > static_cast<std::int64_t>(n)) {
                throw BuildError(BuildErrorKind::VertexOutOfRange, "vertex " + std::to_string(raw) + " out of range");
            }
            v = static_cast<Vertex>(raw);
        }
    }
    return Hypergraph::build(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k), std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.n() << ' ' << h.k() << ' ' << h.m() << '\n';
    for (const Edge& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

Coloring read_coloring(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    std::istringstream ls(line);
    std::vector<Color> colors;
    std::int64_t c = 0;
    while (ls >> c) {
        if (c < 1) throw std::runtime_error("coloring: colors must be positive");
        colors.push_back(static_cast<Color>(c));
    }
    if (!ls.eof()) throw std::runtime_error("coloring: non-numeric token");
    return Coloring(std::move(colors));
}

void write_coloring(std::ostream& out, const Coloring& c) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c.values()[i];
    out << '\n';
}

namespace {
std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}
} // namespace

Hypergraph load_hypergraph(const std::string& path) {
    auto in = open_in(path);
    return read_hypergraph(in);
}

void save_hypergraph(const std::string& path, const Hypergraph& h) {
    auto out = open_out(path);
    write_hypergraph(out, h);
}

Coloring load_coloring(const std::string& path) {
    auto in = open_in(path);
    return read_coloring(in);
}

void save_coloring(const std::string& path, const Coloring& c) {
    auto out = open_out(path);
    write_coloring(out, c);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace recolor
