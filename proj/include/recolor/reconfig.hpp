#pragma once

#include <string>

#include "recolor/hypergraph.hpp"
#include "recolor/independence.hpp"

namespace recolor {

/// One edge of the reconfiguration graph: recolor `vertex` to `new_color`.
struct RecolorStep {
    Vertex vertex = 0;
    Color new_color = 0;

    bool operator==(const RecolorStep&) const = default;
};

enum class Phase {
    Inter,      // class-by-class recoloring toward a good greedy coloring
    Core,       // bridge across a coreless residual
    FinalSwap,  // move class d+1 to a free color, then install the target class
    Reversed,   // second endpoint's approach, walked backwards
};

/// Contiguous run of steps produced by one phase. `depth` is the number of
/// color classes already fixed when the phase ran; steps in the run never
/// use colors 1..depth.
struct PhaseSpan {
    Phase phase = Phase::Inter;
    std::uint32_t depth = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct PathStats {
    std::size_t inter_moves = 0;
    std::size_t core_moves = 0;
    std::size_t core_detours = 0;
    std::size_t final_moves = 0;
    std::size_t reversed_moves = 0;
    std::uint32_t final_depth = 0;
    // Largest number of times one vertex was recolored inside a single
    // inter phase, before its core bridge.
    std::uint32_t max_inter_recolors = 0;
    // Detours inserted at each peel level, concatenated over core bridges.
    std::vector<std::size_t> core_level_detours;
};

struct RecolorPath {
    Coloring start;
    std::vector<RecolorStep> steps;
    Coloring end;
    PathStats stats;
    std::vector<PhaseSpan> spans;

    std::size_t length() const noexcept { return steps.size(); }
};

struct PathOptions {
    std::size_t step_cap = 10'000'000;
    MisStrategy strategy = MisStrategy::AscendingId;
    std::uint64_t seed = 0;
};

/// The greedy sequence built while approaching a good greedy coloring left a
/// residual with a beta-core, so the hypergraph is not (alpha, beta)-colorable.
class NotColorableEvidence : public std::runtime_error {
public:
    NotColorableEvidence(const std::string& what, ColorabilityWitness witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const ColorabilityWitness& witness() const noexcept { return witness_; }

private:
    ColorabilityWitness witness_;
};

class PathCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Path from chi to tau when both agree on V \ W, use only colors 1..alpha
/// there, tau uses at most beta further colors on W, and W has no beta-core.
/// Detours park the vertex being inserted on a spare color in
/// alpha+1..alpha+beta+1.
RecolorPath path_core(const Hypergraph& h, const VertexList& w, const Coloring& chi, const Coloring& tau,
                      std::uint32_t alpha, std::uint32_t beta, Color q, const PathOptions& opts = {});

struct GoodGreedyApproach {
    RecolorPath path;
    Coloring target;
};

/// Walk from chi to a good greedy coloring (classes 1..alpha, residual on
/// alpha+1..alpha+beta+1).
GoodGreedyApproach path_to_good_greedy(const Hypergraph& h, const Coloring& chi, Color q, std::uint32_t alpha,
                                       std::uint32_t beta, const PathOptions& opts = {});

/// Walk between two good greedy colorings, fixing one class per recursion
/// level.
RecolorPath path_between_good_greedy(const Hypergraph& h, const Coloring& chi, const Coloring& tau, Color q,
                                     std::uint32_t alpha, std::uint32_t beta, const PathOptions& opts = {});

/// Walk between any two proper colorings with colors in 1..q.
RecolorPath connect(const Hypergraph& h, const Coloring& from, const Coloring& to, Color q, std::uint32_t alpha,
                    std::uint32_t beta, const PathOptions& opts = {});

enum class PathViolation {
    None,
    BadStart,         // wrong length, uncolored, out of palette, or improper start
    VertexOutOfRange,
    ColorOutOfRange,
    NotSingleChange,  // step leaves the coloring unchanged
    Improper,         // intermediate coloring has a monochromatic edge
};

struct PathVerdict {
    bool ok = true;
    PathViolation violation = PathViolation::None;
    std::size_t step = 0;  // index of the offending step when !ok
    std::string detail;
    Coloring end;
};

PathVerdict verify_path(const Hypergraph& h, const Coloring& start, const std::vector<RecolorStep>& steps, Color q);
PathVerdict verify_path(const Hypergraph& h, const RecolorPath& path, Color q);

Coloring replay(const Coloring& start, const std::vector<RecolorStep>& steps);

const char* to_string(PathViolation v);
const char* to_string(Phase p);

} // namespace recolor
