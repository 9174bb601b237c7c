#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "recolor/core_peel.hpp"
#include "recolor/experiments.hpp"
#include "recolor/gamma_oracle.hpp"
#include "recolor/independence.hpp"
#include "recolor/reconfig.hpp"

using namespace recolor;

namespace {

enum class Format { Text, Csv };

struct Globals {
    std::uint64_t seed = 0;
    Format format = Format::Text;
    std::string out;
};

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void print_list(std::ostream& os, const VertexList& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
}

MisStrategy parse_strategy(const std::string& s) { return s == "random" ? MisStrategy::SeededRandom : MisStrategy::AscendingId; }

const std::vector<std::string> kStrategies{"ascending", "random"};

struct Trace {
    std::vector<RecolorStep> steps;
    std::vector<std::uint64_t> old_colors;
};

// Trace lines are "index vertex old_color new_color"; commas also accepted
// and a non-numeric header line is skipped.
Trace read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file " + path);
    Trace t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& ch : line) {
            if (ch == ',') ch = ' ';
        }
        std::istringstream ls(line);
        std::uint64_t index, vertex, old_color, new_color;
        if (!(ls >> index >> vertex >> old_color >> new_color)) {
            if (lineno == 1 || line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::runtime_error("malformed trace line " + std::to_string(lineno));
        }
        if (index != t.steps.size()) throw std::runtime_error("trace index out of sequence at line " + std::to_string(lineno));
        t.steps.push_back({static_cast<Vertex>(vertex), static_cast<Color>(new_color)});
        t.old_colors.push_back(old_color);
    }
    return t;
}

// First step whose recorded old color disagrees with the replay.
std::optional<std::size_t> old_color_mismatch(const Coloring& start, const Trace& t) {
    Coloring cur = start;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (cur[t.steps[i].vertex] != t.old_colors[i]) return i;
        cur.set(t.steps[i].vertex, t.steps[i].new_color);
    }
    return std::nullopt;
}

void write_trace(std::ostream& os, const RecolorPath& p, Format fmt) {
    const char sep = fmt == Format::Csv ? ',' : ' ';
    if (fmt == Format::Csv) os << "index,vertex,old_color,new_color\n";
    Coloring cur = p.start;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& s = p.steps[i];
        os << i << sep << s.vertex << sep << cur[s.vertex] << sep << s.new_color << '\n';
        cur.set(s.vertex, s.new_color);
    }
}

// Exact integer while it fits 64 bits, scientific beyond.
std::string format_count(long double x) {
    std::ostringstream os;
    if (x < 1.8e19L) os << static_cast<std::uint64_t>(x);
    else os << std::setprecision(std::numeric_limits<long double>::digits10) << x;
    return os.str();
}

void print_witness(std::ostream& os, const ColorabilityWitness& w) {
    for (std::size_t i = 0; i < w.sequence.sets.size(); ++i) {
        os << "V" << i + 1 << ": ";
        print_list(os, w.sequence.sets[i]);
        os << '\n';
    }
    os << "residual: ";
    print_list(os, w.sequence.residual);
    os << "\ncore: ";
    print_list(os, w.core_vertices);
    os << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recoloring toolkit for proper colorings of k-uniform hypergraphs.\n"
                 "All logarithms are natural."};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
    app.add_option("--out", g.out, "Write output to FILE instead of stdout");

    std::string graph_path, from_path, to_path, trace_path, strategy = "ascending", mc_strategy = "random", method = "auto";
    std::uint32_t n = 0, k = 2, alpha = 0, beta = 1, trials = 100, threads = 1, q = 0;
    std::uint64_t m = 0, n_big = 0;
    double d = 0, p = 0;
    std::size_t step_cap = 10'000'000;
    bool histogram = false, timing = false;

    auto* params = app.add_subcommand("params", "Asymptotic parameters alpha, beta, m0, n0, p, m for degree d (natural logs)");
    params->add_option("-d,--d", d, "Average degree parameter, > 1")->required();
    params->add_option("-k,--k", k, "Uniformity")->capture_default_str();
    params->add_option("-n,--n", n_big, "Vertex count")->required();

    auto* gen = app.add_subcommand("gen", "Generate a random k-uniform hypergraph");
    gen->add_option("-n,--n", n, "Vertex count")->required();
    gen->add_option("-k,--k", k, "Uniformity")->capture_default_str();
    auto* gen_m = gen->add_option("-m,--m", m, "Exact edge count (uniform model)");
    auto* gen_p = gen->add_option("-p,--p", p, "Edge probability (binomial model)");
    gen_m->excludes(gen_p);
    gen_p->excludes(gen_m);

    auto* core = app.add_subcommand("core", "beta-core and peeling order of a hypergraph");
    core->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    core->add_option("-b,--beta", beta, "Core threshold")->required();

    auto* mis = app.add_subcommand("mis", "One maximal independent set");
    mis->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    mis->add_option("--strategy", strategy, "Vertex order")->check(CLI::IsMember(kStrategies))->capture_default_str();

    auto* greedy = app.add_subcommand("greedy", "Maximally independent sequence V_1..V_alpha");
    greedy->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    greedy->add_option("-a,--alpha", alpha, "Sequence length")->required();
    auto* greedy_beta = greedy->add_option("-b,--beta", beta, "Also report the beta-core of the residual");
    greedy->add_option("--strategy", strategy, "Vertex order")->check(CLI::IsMember(kStrategies))->capture_default_str();

    auto* certify = app.add_subcommand("certify", "(alpha, beta)-colorability: exhaustive, or random falsification");
    certify->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    certify->add_option("-a,--alpha", alpha, "Number of greedy classes")->required();
    certify->add_option("-b,--beta", beta, "Core threshold for the residual")->required();
    certify->add_option("--method", method, "auto = exact when n <= 12")
        ->check(CLI::IsMember({"auto", "exact", "falsify"}))
        ->capture_default_str();
    certify->add_option("--trials", trials, "Random sequences tried by falsify")->capture_default_str();

    auto* conn = app.add_subcommand("connect", "Recoloring path between two proper colorings, as a trace");
    conn->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    conn->add_option("--from", from_path, "Start coloring file")->required()->check(CLI::ExistingFile);
    conn->add_option("--to", to_path, "Target coloring file")->required()->check(CLI::ExistingFile);
    conn->add_option("-q,--q", q, "Number of colors, >= alpha+beta+1")->required();
    conn->add_option("-a,--alpha", alpha, "Greedy classes")->required();
    conn->add_option("-b,--beta", beta, "Core threshold")->required();
    conn->add_option("--step-cap", step_cap, "Abort beyond this many steps")->capture_default_str();
    conn->add_option("--strategy", strategy, "Vertex order for independent sets")
        ->check(CLI::IsMember(kStrategies))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Replay a trace and check every step");
    verify->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    verify->add_option("--from", from_path, "Start coloring file")->required()->check(CLI::ExistingFile);
    verify->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
    verify->add_option("-q,--q", q, "Number of colors")->required();
    verify->add_option("--to", to_path, "Expected final coloring")->check(CLI::ExistingFile);

    auto* gamma = app.add_subcommand("gamma", "Brute-force reconfiguration graph statistics (tiny instances)");
    gamma->add_option("-g,--graph", graph_path, "Hypergraph file")->required()->check(CLI::ExistingFile);
    gamma->add_option("-q,--q", q, "Number of colors")->required();
    gamma->add_flag("--histogram", histogram, "Component-size histogram instead of the summary");

    auto* mc = app.add_subcommand("montecarlo",
                                  "Monte-Carlo colorability trials on random hypergraphs; one CSV row per trial.\n"
                                  "With -d and no alpha/beta the asymptotic formulas are used (natural logs).");
    mc->add_option("-n,--n", n, "Vertex count")->required();
    mc->add_option("-k,--k", k, "Uniformity")->capture_default_str();
    auto* mc_d = mc->add_option("-d,--d", d, "Average degree; m = round(d n / k)");
    auto* mc_m = mc->add_option("-m,--m", m, "Edge count");
    auto* mc_alpha = mc->add_option("-a,--alpha", alpha, "Greedy classes");
    auto* mc_beta = mc->add_option("-b,--beta", beta, "Core threshold");
    mc->add_option("--trials", trials, "Number of trials")->capture_default_str();
    mc->add_option("--threads", threads, "Worker threads; output does not depend on it")->capture_default_str();
    mc->add_option("--strategy", mc_strategy, "Vertex order")->check(CLI::IsMember(kStrategies))->capture_default_str();
    auto* mc_q = mc->add_option("--connect-q", q, "Also connect two random proper q-colorings per trial");
    mc->add_option("--step-cap", step_cap, "Path step cap")->capture_default_str();
    mc->add_flag("--timing", timing, "Append wall_ms (makes output non-reproducible)");

    CLI11_PARSE(app, argc, argv);

    try {
        g.format = format == "csv" ? Format::Csv : Format::Text;
        Sink sink(g.out);
        std::ostream& out = sink.get();
        const bool csv = g.format == Format::Csv;

        if (params->parsed()) {
            ParamSet ps = params_from_d(d, k, n_big);
            out << std::setprecision(std::numeric_limits<double>::max_digits10);
            if (csv) {
                out << "d,k,n,alpha,alpha_int,beta,beta_int,m0,n0,p,m\n"
                    << ps.d << ',' << ps.k << ',' << ps.n << ',' << ps.alpha << ',' << ps.alpha_int << ','
                    << ps.beta << ',' << ps.beta_int << ',' << ps.m0 << ',' << ps.n0 << ',' << ps.p << ','
                    << format_count(ps.m) << '\n';
            } else {
                out << "d: " << ps.d << "\nk: " << ps.k << "\nn: " << ps.n << "\nalpha: " << ps.alpha
                    << "\nalpha_int: " << ps.alpha_int << "\nbeta: " << ps.beta << "\nbeta_int: " << ps.beta_int
                    << "\nm0: " << ps.m0 << "\nn0: " << ps.n0 << "\np: " << ps.p << "\nm: " << format_count(ps.m) << '\n';
            }
        } else if (gen->parsed()) {
            if (gen_p->count()) write_hypergraph(out, generate_hnp(n, p, k, g.seed));
            else write_hypergraph(out, generate_hnm(n, m, k, g.seed));
        } else if (core->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            PeelResult r = beta_core(h, beta);
            if (csv) {
                out << "vertex,in_core,order_position\n";
                std::vector<std::int64_t> pos(h.n() + 1, -1);
                for (std::size_t i = 0; i < r.order.size(); ++i) pos[r.order[i]] = static_cast<std::int64_t>(i);
                auto in_core = make_mask(h.n(), r.core);
                for (Vertex v = 1; v <= h.n(); ++v) out << v << ',' << (in_core[v] ? 1 : 0) << ',' << pos[v] << '\n';
            } else {
                out << "core_size: " << r.core.size() << "\ncore: ";
                print_list(out, r.core);
                out << "\norder: ";
                print_list(out, r.order);
                out << "\norder_certified: " << (certify_peel_order(h, beta, r.order) ? "yes" : "no") << '\n';
            }
        } else if (mis->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            VertexList set = extend_to_mis(h, h.vertices(), {}, parse_strategy(strategy), g.seed);
            if (csv) {
                out << "vertex\n";
                for (Vertex v : set) out << v << '\n';
            } else {
                out << "size: " << set.size() << "\nset: ";
                print_list(out, set);
                out << '\n';
            }
        } else if (greedy->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            MISequence seq = greedy_sequence(h, alpha, parse_strategy(strategy), g.seed);
            std::optional<PeelResult> peel;
            if (greedy_beta->count()) peel = beta_core(h, beta, seq.residual);
            if (csv) {
                out << "vertex,class\n";
                std::vector<std::uint32_t> cls(h.n() + 1, 0);
                for (std::size_t i = 0; i < seq.sets.size(); ++i) {
                    for (Vertex v : seq.sets[i]) cls[v] = static_cast<std::uint32_t>(i + 1);
                }
                for (Vertex v = 1; v <= h.n(); ++v) out << v << ',' << cls[v] << '\n';
            } else {
                for (std::size_t i = 0; i < seq.sets.size(); ++i) {
                    out << "V" << i + 1 << ": ";
                    print_list(out, seq.sets[i]);
                    out << '\n';
                }
                out << "residual: ";
                print_list(out, seq.residual);
                out << '\n';
                if (peel) {
                    out << "residual_core: ";
                    print_list(out, peel->core);
                    out << '\n';
                }
            }
        } else if (certify->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            const bool exact = method == "exact" || (method == "auto" && h.n() <= ExactLimits{}.max_vertices);
            std::optional<ColorabilityWitness> witness;
            if (exact) witness = is_alpha_beta_colorable_exact(h, alpha, beta).witness;
            else witness = falsify_alpha_beta(h, alpha, beta, trials, g.seed);
            const char* verdict = witness ? "not-colorable" : exact ? "colorable" : "no-witness-found";
            if (csv) {
                out << "method,alpha,beta,verdict\n"
                    << (exact ? "exact" : "falsify") << ',' << alpha << ',' << beta << ',' << verdict << '\n';
            } else {
                out << "method: " << (exact ? "exact" : "falsify") << "\nverdict: " << verdict << '\n';
                if (witness) print_witness(out, *witness);
            }
        } else if (conn->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            PathOptions opts;
            opts.step_cap = step_cap;
            opts.strategy = parse_strategy(strategy);
            opts.seed = g.seed;
            RecolorPath path = connect(h, load_coloring(from_path), load_coloring(to_path), q, alpha, beta, opts);
            write_trace(out, path, g.format);
            std::cerr << "length " << path.length() << " (inter " << path.stats.inter_moves << ", core "
                      << path.stats.core_moves << ", final " << path.stats.final_moves << ", reversed "
                      << path.stats.reversed_moves << ")\n";
        } else if (verify->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            Coloring start = load_coloring(from_path);
            Trace trace = read_trace(trace_path);
            const auto& steps = trace.steps;
            PathVerdict v = verify_path(h, start, steps, q);
            std::optional<std::size_t> mismatch;
            if (v.ok) mismatch = old_color_mismatch(start, trace);
            bool reached = true;
            if (v.ok && !to_path.empty()) reached = v.end == load_coloring(to_path);
            const bool ok = v.ok && !mismatch && reached;
            if (csv) {
                out << "ok,length,violation,step,reached_target\n"
                    << (ok ? 1 : 0) << ',' << steps.size() << ','
                    << (mismatch ? "old-color-mismatch" : to_string(v.violation)) << ','
                    << (mismatch ? *mismatch : v.step) << ',' << (reached ? 1 : 0) << '\n';
            } else {
                out << "ok: " << (ok ? "yes" : "no") << "\nlength: " << steps.size() << '\n';
                if (!v.ok) out << "violation: " << to_string(v.violation) << " at step " << v.step << ": " << v.detail << '\n';
                if (mismatch) out << "violation: recorded old color disagrees with replay at step " << *mismatch << '\n';
                if (!to_path.empty()) out << "reached_target: " << (reached ? "yes" : "no") << '\n';
            }
            return ok ? 0 : 1;
        } else if (gamma->parsed()) {
            Hypergraph h = load_hypergraph(graph_path);
            GammaStats s = gamma_stats(h, q);
            if (histogram) {
                std::map<std::uint64_t, std::uint64_t> hist;
                for (auto size : s.component_sizes) ++hist[size];
                out << "size,count\n";
                for (auto [size, count] : hist) out << size << ',' << count << '\n';
            } else if (csv) {
                out << "num_colorings,num_components,largest_component,connected,diameter\n"
                    << s.num_colorings << ',' << s.num_components << ','
                    << (s.component_sizes.empty() ? 0 : s.component_sizes.front()) << ',' << (s.connected ? 1 : 0)
                    << ',';
                if (s.diameter) out << *s.diameter;
                out << '\n';
            } else {
                out << "num_colorings: " << s.num_colorings << "\nnum_components: " << s.num_components
                    << "\nlargest_component: " << (s.component_sizes.empty() ? 0 : s.component_sizes.front())
                    << "\nconnected: " << (s.connected ? "yes" : "no") << "\ndiameter: ";
                if (s.diameter) out << *s.diameter;
                else out << (s.diameter_skipped ? "skipped" : "n/a");
                out << '\n';
            }
        } else if (mc->parsed()) {
            MonteCarloConfig cfg;
            cfg.n = n;
            cfg.k = k;
            if (mc_d->count()) cfg.d = d;
            if (mc_m->count()) cfg.m = m;
            if (mc_alpha->count()) cfg.alpha = alpha;
            if (mc_beta->count()) cfg.beta = beta;
            cfg.trials = trials;
            cfg.seed = g.seed;
            cfg.threads = threads;
            cfg.strategy = parse_strategy(mc_strategy);
            if (mc_q->count()) cfg.connect_q = q;
            cfg.step_cap = step_cap;
            MonteCarloResult r = montecarlo_colorability(cfg);
            if (csv) {
                write_trial_csv(out, r.records, timing);
            } else {
                std::uint64_t residual = 0, within = 0;
                for (const auto& rec : r.records) {
                    residual += rec.residual_size;
                    within += rec.residual_within_n0;
                }
                out << "trials: " << r.records.size() << "\nm: " << r.records.front().m
                    << "\nalpha: " << r.records.front().alpha << "\nbeta: " << r.records.front().beta
                    << "\nwitnesses: " << r.witnesses << "\nwitness_rate: " << r.witness_rate()
                    << "\nmean_residual: " << static_cast<double>(residual) / static_cast<double>(r.records.size())
                    << "\nresidual_within_n0: " << within << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
