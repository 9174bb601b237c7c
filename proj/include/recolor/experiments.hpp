#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "recolor/hypergraph.hpp"
#include "recolor/independence.hpp"

namespace recolor {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Asymptotic parameters for average degree d. All logarithms are natural.
///
///   alpha = ((k-1) d / (ln d - 5(k-1) ln ln d))^(1/(k-1))
///   beta  = 3 (ln d)^(3k)
///   m0 = n / alpha,  n0 = 16 m0 (ln d)^2,  p = d / C(n-1, k-1),  m = round(d n / k)
///
/// The algorithms use the integer ceilings of alpha and beta.
struct ParamSet {
    double d = 0;
    std::uint32_t k = 2;
    std::uint64_t n = 0;
    double alpha = 0;
    double beta = 0;
    std::uint64_t alpha_int = 0;
    std::uint64_t beta_int = 0;
    double m0 = 0;
    double n0 = 0;
    double p = 0;
    // round-half-up of d n / k; may exceed 64 bits for huge d.
    long double m = 0;

    /// m as an edge count; throws DomainError when it does not fit.
    std::uint64_t edge_count() const;
};

ParamSet params_from_d(double d, std::uint32_t k, std::uint64_t n);

enum class Verdict { BoundRespected, BoundViolated, Inconclusive };
enum class ProbeMode { Auto, Exact, Heuristic };

const char* to_string(Verdict v);

struct IndependentSetProbe {
    Verdict verdict = Verdict::Inconclusive;
    bool exact = false;
    double bound = 0;        // u = (2k ln d / ((k-1) d))^(1/(k-1)) n
    std::size_t observed = 0;  // largest independent set found
    VertexList witness;
};

/// Compares the largest independent set against u. Exact mode (n <= 30)
/// uses branch and bound; heuristic mode takes the best of `runs` random
/// greedy maximal independent sets and can only prove a violation.
IndependentSetProbe probe_independent_set_bound(const Hypergraph& h, double d, ProbeMode mode = ProbeMode::Auto,
                                                std::uint32_t runs = 10, std::uint64_t seed = 0);

struct DensityProbe {
    Verdict verdict = Verdict::Inconclusive;
    bool exact = false;
    double best_ratio = 0;  // max edges(S)/|S| over 1 <= |S| <= n0
    std::size_t best_edges = 0;
    VertexList best_set;
};

/// Looks for S with |S| <= n0 spanning at least L |S| edges. Exact mode
/// (n <= 20) enumerates subsets; heuristic mode peels min-degree vertices and
/// keeps the densest prefix.
DensityProbe probe_density(const Hypergraph& h, double n0, double L, ProbeMode mode = ProbeMode::Auto);

struct MonteCarloConfig {
    std::uint32_t n = 0;
    std::uint32_t k = 2;
    std::optional<double> d;
    std::optional<std::uint64_t> m;
    std::optional<std::uint32_t> alpha;
    std::optional<std::uint32_t> beta;
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;
    MisStrategy strategy = MisStrategy::SeededRandom;
    std::uint32_t threads = 1;
    // When nonzero, each witness-free trial also connects two random proper
    // q-colorings and records the path length.
    Color connect_q = 0;
    std::size_t step_cap = 10'000'000;
};

/// Outcome of one trial. Everything except wall_ms is a pure function of
/// (config, trial index).
struct TrialRecord {
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint64_t m = 0;
    std::uint32_t alpha = 0;
    std::uint32_t beta = 0;
    std::uint64_t residual_size = 0;
    std::uint64_t residual_core_size = 0;
    bool witness = false;
    bool residual_within_n0 = false;
    // -1 not attempted, -2 no random proper q-coloring found, -3 construction
    // failed (evidence of non-colorability or step cap).
    std::int64_t path_length = -1;
    double wall_ms = 0;
};

struct MonteCarloResult {
    std::vector<TrialRecord> records;
    std::uint64_t witnesses = 0;
    double witness_rate() const {
        return records.empty() ? 0.0 : static_cast<double>(witnesses) / static_cast<double>(records.size());
    }
};

MonteCarloResult montecarlo_colorability(const MonteCarloConfig& config);

/// Fixed CSV layout; wall time is appended only when `with_timing`.
void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool with_timing = false);
std::string trial_csv_header(bool with_timing = false);

/// Random proper coloring: vertices in smallest-last order, each taking a
/// uniform color among those not blocked. Returns nullopt when some vertex
/// has every color blocked.
std::optional<Coloring> random_proper_coloring(const Hypergraph& h, Color q, Rng& rng);

} // namespace recolor
