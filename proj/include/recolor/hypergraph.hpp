#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace recolor {

/// Vertex ids run 1..n, colors run 1..q. Color 0 marks an uncolored vertex
/// in partial colorings.
using Vertex = std::uint32_t;
using Color = std::uint32_t;
using EdgeIndex = std::uint32_t;
using Edge = std::vector<Vertex>;
using VertexList = std::vector<Vertex>;
using Rng = std::mt19937_64;

inline constexpr Color kUncolored = 0;

enum class BuildErrorKind { RepeatedVertex, VertexOutOfRange, WrongArity, DuplicateEdge, BadParameters };

class BuildError : public std::invalid_argument {
public:
    BuildError(BuildErrorKind kind, const std::string& what)
        : std::invalid_argument(what), kind_(kind) {}
    BuildErrorKind kind() const noexcept { return kind_; }

private:
    BuildErrorKind kind_;
};

/// Raised when an operation refuses an instance larger than its exhaustive
/// budget instead of silently degrading.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition of a constructive routine was violated by the caller.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Immutable k-uniform hypergraph on vertices 1..n.
///
/// Edges are stored canonically: each edge sorted, the edge list sorted
/// lexicographically, no duplicates.
class Hypergraph {
public:
    static Hypergraph build(std::uint32_t n, std::uint32_t k, std::vector<Edge> edges);

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t k() const noexcept { return k_; }
    std::size_t m() const noexcept { return edges_.size(); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    std::span<const EdgeIndex> incident(Vertex v) const { return incidence_[v - 1]; }
    std::size_t degree(Vertex v) const { return incidence_[v - 1].size(); }

    VertexList vertices() const;

    bool operator==(const Hypergraph& other) const {
        return n_ == other.n_ && k_ == other.k_ && edges_ == other.edges_;
    }

private:
    Hypergraph() = default;

    std::uint32_t n_ = 0;
    std::uint32_t k_ = 2;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> incidence_;
};

/// Vertex -> color map over 1..n. A zero entry means "uncolored" and is only
/// meaningful for partial colorings.
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::size_t n, Color fill = kUncolored) : colors_(n, fill) {}
    explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}
    Coloring(std::initializer_list<Color> colors) : colors_(colors) {}

    std::size_t size() const noexcept { return colors_.size(); }
    Color operator[](Vertex v) const { return colors_[v - 1]; }
    void set(Vertex v, Color c) { colors_[v - 1] = c; }
    const std::vector<Color>& values() const noexcept { return colors_; }

    /// Largest color used, 0 for an empty coloring.
    Color max_color() const;

    bool operator==(const Coloring&) const = default;

private:
    std::vector<Color> colors_;
};

std::ostream& operator<<(std::ostream& os, const Coloring& c);

/// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

Hypergraph generate_hnm(std::uint32_t n, std::uint64_t m, std::uint32_t k, std::uint64_t seed);
Hypergraph generate_hnp(std::uint32_t n, double p, std::uint32_t k, std::uint64_t seed);

/// True iff no edge is monochromatic. Throws on length mismatch or on an
/// uncolored vertex.
bool is_proper(const Hypergraph& h, const Coloring& c);

/// Like is_proper but only inspects edges lying fully inside `mask`
/// (mask indexed by vertex id, entry 0 unused).
bool is_proper_on(const Hypergraph& h, const Coloring& c, const std::vector<char>& mask);

std::size_t hamming(const Coloring& a, const Coloring& b);

/// Sub-hypergraph induced by `keep`: only edges fully inside `keep` survive.
/// Vertices are relabelled 1..|keep| in ascending order of their old ids;
/// `old_ids[i]` is the original id of new vertex i+1.
struct InducedHypergraph {
    Hypergraph graph;
    VertexList old_ids;
};
InducedHypergraph induced_subhypergraph(const Hypergraph& h, const VertexList& keep);

// Membership mask indexed by vertex id (slot 0 unused).
std::vector<char> make_mask(std::uint32_t n, const VertexList& vs);
VertexList mask_to_list(const std::vector<char>& mask);

Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& h);

Coloring read_coloring(std::istream& in);
void write_coloring(std::ostream& out, const Coloring& c);
Coloring load_coloring(const std::string& path);
void save_coloring(const std::string& path, const Coloring& c);

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

} // namespace recolor
