#include "recolor/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "recolor/core_peel.hpp"
#include "recolor/reconfig.hpp"

namespace recolor {

std::uint64_t ParamSet::edge_count() const {
    if (m > 1.8e19L) throw DomainError("m does not fit a 64-bit edge count");
    return static_cast<std::uint64_t>(m);
}

namespace {

// Ceiling that ignores rounding noise just above an integer.
std::uint64_t safe_ceil(long double x) {
    const long double r = std::round(x);
    if (std::fabs(x - r) <= 1e-12L * std::max(1.0L, std::fabs(x))) return static_cast<std::uint64_t>(r);
    return static_cast<std::uint64_t>(std::ceil(x));
}

} // namespace

ParamSet params_from_d(double d, std::uint32_t k, std::uint64_t n) {
    if (!(d > 1.0)) throw DomainError("need d > 1");
    if (k < 2) throw DomainError("need k >= 2");
    if (n < k) throw DomainError("need n >= k");
    const long double ld = std::log(static_cast<long double>(d));
    const long double denom = ld - 5.0L * (k - 1) * std::log(ld);
    if (!(denom > 0)) {
        std::ostringstream os;
        os << "ln d - 5(k-1) ln ln d = " << static_cast<double>(denom) << " <= 0 for d=" << d << ", k=" << k
           << "; d is too small for the asymptotic formula, supply alpha and beta explicitly";
        throw DomainError(os.str());
    }
    ParamSet ps;
    ps.d = d;
    ps.k = k;
    ps.n = n;
    const long double alpha = std::pow((k - 1) * static_cast<long double>(d) / denom, 1.0L / (k - 1));
    const long double beta = 3.0L * std::pow(ld, 3.0L * k);
    ps.alpha = static_cast<double>(alpha);
    ps.beta = static_cast<double>(beta);
    ps.alpha_int = safe_ceil(alpha);
    ps.beta_int = safe_ceil(beta);
    ps.m0 = static_cast<double>(n / alpha);
    ps.n0 = static_cast<double>(16.0L * (n / alpha) * ld * ld);

    // C(n-1, k-1) in floating point; exact enough for a probability.
    long double choose = 1;
    for (std::uint32_t i = 1; i < k; ++i) choose = choose * static_cast<long double>(n - k + i) / i;
    const long double p = d / choose;
    if (p > 1) {
        throw DomainError("p = d / C(n-1,k-1) exceeds 1; n is too small for this d");
    }
    ps.p = static_cast<double>(p);
    ps.m = std::floor(static_cast<long double>(d) * n / k + 0.5L);
    return ps;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::BoundRespected: return "bound-respected";
        case Verdict::BoundViolated: return "bound-violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

IndependentSetProbe probe_independent_set_bound(const Hypergraph& h, double d, ProbeMode mode, std::uint32_t runs,
                                                std::uint64_t seed) {
    if (!(d > 0)) throw DomainError("need d > 0");
    const double k = h.k();
    IndependentSetProbe probe;
    probe.bound = std::pow(2.0 * k * std::log(d) / ((k - 1) * d), 1.0 / (k - 1)) * h.n();
    const bool exact = mode == ProbeMode::Exact || (mode == ProbeMode::Auto && h.n() <= 30);
    if (exact) {
        IndependentSet best = max_independent_set_exact(h);
        probe.exact = true;
        probe.observed = best.size;
        probe.witness = std::move(best.set);
        probe.verdict = probe.observed >= probe.bound ? Verdict::BoundViolated : Verdict::BoundRespected;
        return probe;
    }
    for (std::uint32_t r = 0; r < std::max<std::uint32_t>(runs, 1); ++r) {
        VertexList set = extend_to_mis(h, h.vertices(), {}, MisStrategy::SeededRandom, mix_seed(seed, r));
        if (set.size() > probe.observed || probe.witness.empty()) {
            probe.observed = set.size();
            probe.witness = std::move(set);
        }
    }
    probe.verdict = probe.observed >= probe.bound ? Verdict::BoundViolated : Verdict::Inconclusive;
    return probe;
}

namespace {

DensityProbe density_exact(const Hypergraph& h, std::size_t max_size) {
    if (h.n() > 20) throw BudgetExceeded("exact density probe refused: n > 20");
    std::vector<std::uint32_t> edge_masks;
    for (const Edge& e : h.edges()) {
        std::uint32_t m = 0;
        for (Vertex v : e) m |= 1u << (v - 1);
        edge_masks.push_back(m);
    }
    DensityProbe probe;
    probe.exact = true;
    const std::uint32_t limit = 1u << h.n();
    std::uint32_t best_mask = 0;
    for (std::uint32_t s = 1; s < limit; ++s) {
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size > max_size) continue;
        std::size_t inside = 0;
        for (std::uint32_t e : edge_masks) inside += (e & s) == e;
        const double ratio = static_cast<double>(inside) / static_cast<double>(size);
        if (best_mask == 0 || ratio > probe.best_ratio) {
            probe.best_ratio = ratio;
            probe.best_edges = inside;
            best_mask = s;
        }
    }
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (best_mask & (1u << (v - 1))) probe.best_set.push_back(v);
    }
    return probe;
}

// Peel a minimum inside-degree vertex at a time (smallest id on ties).
// Returns vertices in removal order.
VertexList min_degree_removal(const Hypergraph& h) {
    std::vector<std::size_t> deg(h.n() + 1, 0);
    for (Vertex v = 1; v <= h.n(); ++v) deg[v] = h.degree(v);
    std::vector<char> alive_edge(h.m(), 1);
    std::vector<char> present(h.n() + 1, 1);
    VertexList removed;
    for (std::uint32_t step = 0; step < h.n(); ++step) {
        Vertex pick = 0;
        for (Vertex v = 1; v <= h.n(); ++v) {
            if (present[v] && (pick == 0 || deg[v] < deg[pick])) pick = v;
        }
        present[pick] = 0;
        removed.push_back(pick);
        for (EdgeIndex e : h.incident(pick)) {
            if (!alive_edge[e]) continue;
            alive_edge[e] = 0;
            for (Vertex u : h.edge(e)) {
                if (u != pick) --deg[u];
            }
        }
    }
    return removed;
}

DensityProbe density_greedy(const Hypergraph& h, std::size_t max_size) {
    DensityProbe probe;
    VertexList removal = min_degree_removal(h);
    // Walk the removal order backwards: suffix sets are what remains.
    std::vector<char> in_set(h.n() + 1, 0);
    std::size_t inside = 0;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < removal.size(); ++i) {
        Vertex v = removal[removal.size() - 1 - i];
        in_set[v] = 1;
        for (EdgeIndex e : h.incident(v)) {
            const Edge& edge = h.edge(e);
            inside += std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return in_set[u]; });
        }
        const std::size_t size = i + 1;
        if (size > max_size) break;
        const double ratio = static_cast<double>(inside) / static_cast<double>(size);
        if (best_len == 0 || ratio > probe.best_ratio) {
            probe.best_ratio = ratio;
            probe.best_edges = inside;
            best_len = size;
        }
    }
    probe.best_set.assign(removal.end() - static_cast<std::ptrdiff_t>(best_len), removal.end());
    std::sort(probe.best_set.begin(), probe.best_set.end());
    return probe;
}

} // namespace

DensityProbe probe_density(const Hypergraph& h, double n0, double L, ProbeMode mode) {
    const auto max_size = static_cast<std::size_t>(std::max(0.0, std::floor(n0)));
    const bool exact = mode == ProbeMode::Exact || (mode == ProbeMode::Auto && h.n() <= 20);
    DensityProbe probe = max_size == 0 ? DensityProbe{}
                         : exact      ? density_exact(h, max_size)
                                      : density_greedy(h, max_size);
    probe.exact = exact;
    const bool found = !probe.best_set.empty() &&
                       static_cast<double>(probe.best_edges) >= L * static_cast<double>(probe.best_set.size());
    if (found) probe.verdict = Verdict::BoundViolated;
    else probe.verdict = exact ? Verdict::BoundRespected : Verdict::Inconclusive;
    return probe;
}

std::optional<Coloring> random_proper_coloring(const Hypergraph& h, Color q, Rng& rng) {
    VertexList removal = min_degree_removal(h);
    Coloring c(h.n());
    for (auto it = removal.rbegin(); it != removal.rend(); ++it) {
        auto blocked = blocked_colors(h, *it, c);
        std::vector<Color> free;
        for (Color col = 1; col <= q; ++col) {
            if (!std::binary_search(blocked.begin(), blocked.end(), col)) free.push_back(col);
        }
        if (free.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        c.set(*it, free[pick(rng)]);
    }
    return c;
}

namespace {

struct ResolvedConfig {
    std::uint64_t m = 0;
    std::uint32_t alpha = 0;
    std::uint32_t beta = 0;
    double n0 = 0;
};

ResolvedConfig resolve(const MonteCarloConfig& cfg) {
    if (cfg.k < 2 || cfg.n < cfg.k) throw std::invalid_argument("montecarlo: need 2 <= k <= n");
    if (cfg.trials < 1) throw std::invalid_argument("montecarlo: trials must be >= 1");
    ResolvedConfig r;
    std::optional<ParamSet> ps;
    if (cfg.d) {
        if (!cfg.alpha || !cfg.beta) ps = params_from_d(*cfg.d, cfg.k, cfg.n);
        r.m = cfg.m ? *cfg.m : static_cast<std::uint64_t>(std::floor(*cfg.d * cfg.n / cfg.k + 0.5));
    } else {
        if (!cfg.m) throw std::invalid_argument("montecarlo: give d or m");
        r.m = *cfg.m;
    }
    if (cfg.alpha) r.alpha = *cfg.alpha;
    else if (ps) r.alpha = static_cast<std::uint32_t>(ps->alpha_int);
    else throw std::invalid_argument("montecarlo: give alpha or d");
    if (cfg.beta) r.beta = *cfg.beta;
    else if (ps) r.beta = static_cast<std::uint32_t>(ps->beta_int);
    else throw std::invalid_argument("montecarlo: give beta or d");
    if (r.beta < 1) throw std::invalid_argument("montecarlo: beta must be >= 1");
    if (r.m > binomial(cfg.n, cfg.k)) throw std::invalid_argument("montecarlo: m exceeds C(n,k)");
    if (cfg.connect_q != 0 && cfg.connect_q < static_cast<std::uint64_t>(r.alpha) + r.beta + 1) {
        throw std::invalid_argument("montecarlo: connect q must be >= alpha+beta+1");
    }
    const double d_eff = cfg.d ? *cfg.d : static_cast<double>(cfg.k) * static_cast<double>(r.m) / cfg.n;
    const double ld = std::log(d_eff);
    r.n0 = r.alpha == 0 ? static_cast<double>(cfg.n) : 16.0 * (static_cast<double>(cfg.n) / r.alpha) * ld * ld;
    return r;
}

TrialRecord run_trial(const MonteCarloConfig& cfg, const ResolvedConfig& r, std::uint32_t index) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = index;
    rec.seed = mix_seed(cfg.seed, index);
    rec.n = cfg.n;
    rec.k = cfg.k;
    rec.m = r.m;
    rec.alpha = r.alpha;
    rec.beta = r.beta;

    Hypergraph h = generate_hnm(cfg.n, r.m, cfg.k, mix_seed(rec.seed, 0));
    MISequence seq = greedy_sequence(h, r.alpha, cfg.strategy, mix_seed(rec.seed, 1));
    PeelResult peel = beta_core(h, r.beta, seq.residual);
    rec.residual_size = seq.residual.size();
    rec.residual_core_size = peel.core.size();
    rec.witness = !peel.coreless();
    rec.residual_within_n0 = static_cast<double>(rec.residual_size) <= r.n0;

    if (cfg.connect_q != 0 && !rec.witness) {
        Rng rng(mix_seed(rec.seed, 2));
        auto a = random_proper_coloring(h, cfg.connect_q, rng);
        auto b = random_proper_coloring(h, cfg.connect_q, rng);
        if (!a || !b) {
            rec.path_length = -2;
        } else {
            PathOptions opts;
            opts.step_cap = cfg.step_cap;
            try {
                rec.path_length = static_cast<std::int64_t>(connect(h, *a, *b, cfg.connect_q, r.alpha, r.beta, opts).length());
            } catch (const NotColorableEvidence&) {
                rec.path_length = -3;
            } catch (const PathCapExceeded&) {
                rec.path_length = -3;
            }
        }
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace

MonteCarloResult montecarlo_colorability(const MonteCarloConfig& config) {
    const ResolvedConfig r = resolve(config);
    MonteCarloResult result;
    result.records.resize(config.trials);
    const std::uint32_t threads = std::clamp<std::uint32_t>(config.threads, 1, config.trials);
    if (threads == 1) {
        for (std::uint32_t i = 0; i < config.trials; ++i) result.records[i] = run_trial(config, r, i);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (std::uint32_t t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        for (std::uint32_t i = t; i < config.trials; i += threads) {
                            result.records[i] = run_trial(config, r, i);
                        }
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    for (const TrialRecord& rec : result.records) result.witnesses += rec.witness;
    return result;
}

std::string trial_csv_header(bool with_timing) {
    std::string h = "trial,seed,n,k,m,alpha,beta,residual_size,residual_core_size,witness,residual_within_n0,path_length";
    if (with_timing) h += ",wall_ms";
    return h;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool with_timing) {
    out << trial_csv_header(with_timing) << '\n';
    for (const TrialRecord& r : records) {
        out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.k << ',' << r.m << ',' << r.alpha << ',' << r.beta
            << ',' << r.residual_size << ',' << r.residual_core_size << ',' << (r.witness ? 1 : 0) << ','
            << (r.residual_within_n0 ? 1 : 0) << ',' << r.path_length;
        if (with_timing) out << ',' << r.wall_ms;
        out << '\n';
    }
}

} // namespace recolor
