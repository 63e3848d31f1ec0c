// girg — generate, compress, query and summarize geometric random graphs.
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "girg/errors.hpp"
#include "girg/hyperbolic.hpp"
#include "girg/io.hpp"
#include "girg/model.hpp"
#include "girg/sampler.hpp"
#include "girg/stats.hpp"
#include "girg/succinct.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCorrupt = 3;
constexpr int kExitModelConfig = 4;

double parse_alpha(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double a = std::stod(s, &used);
        if (used == s.size()) return a;
    } catch (const std::exception&) {
    }
    throw girg::UsageError("alpha must be a number or 'inf'");
}

struct GenerateArgs {
    std::uint64_t n = 0;
    int d = 1;
    std::string alpha = "2";
    double beta = 2.5;
    double delta = 1.0;
    std::string weights = "fixed";
    double p_scale = 1.0;
    double tau = 1.0;
    bool hyperbolic = false;
    double alpha_h = 0.75;
    double c_h = 0.0;
    double t_h = 0.0;
    bool polar_out = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    const std::string edges_path = a.out + ".edges";
    const std::string pos_path = a.out + ".pos";
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    if (a.hyperbolic) {
        girg::HyperbolicParams hp;
        hp.n = a.n;
        hp.alpha_h = a.alpha_h;
        hp.c_h = a.c_h;
        hp.t_h = a.t_h;
        girg::HrgResult res = girg::sample_hrg(hp, a.seed, a.threads);

        girg::EdgeListHeader h;
        h.n = a.n;
        h.d = 1;
        h.alpha = hp.t_h == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / hp.t_h;
        h.beta = 2.0 * hp.alpha_h + 1.0;
        h.seed = a.seed;
        girg::write_edge_list(edges_path, res.graph, h);

        const girg::MappedGirg mapped = girg::map_to_girg(hp, res.points);
        girg::write_positions(pos_path, mapped.positions);
        if (a.polar_out) girg::write_polar(a.out + ".polar", res.points);
        std::printf("n=%" PRIu64 " m=%" PRIu64 " seconds=%.3f\n", a.n,
                    res.graph.num_edges(), elapsed());
        return 0;
    }

    girg::GirgParams params;
    params.d = a.d;
    params.alpha = parse_alpha(a.alpha);
    params.beta = a.beta;
    params.p_scale = a.p_scale;
    params.c_upper = a.p_scale;
    params.tau_threshold = a.tau;
    params.validate();

    girg::WeightSequence ws;
    if (a.weights == "fixed") {
        ws = girg::make_weights_fixed(a.n, a.beta, a.delta);
    } else if (a.weights == "sampled") {
        girg::Rng wr(girg::derive_seed(a.seed, {girg::stream::weights}));
        ws = girg::sample_weights(a.n, a.beta, a.delta, wr);
    } else {
        throw girg::UsageError("--weights must be 'fixed' or 'sampled'");
    }

    girg::GirgResult res = girg::sample_girg(params, ws, a.seed, a.threads);

    girg::EdgeListHeader h;
    h.n = a.n;
    h.d = a.d;
    h.alpha = params.alpha;
    h.beta = a.beta;
    h.seed = a.seed;
    girg::write_edge_list(edges_path, res.graph, h);
    girg::write_positions(pos_path, res.positions);
    std::printf("n=%" PRIu64 " m=%" PRIu64 " seconds=%.3f\n", a.n, res.graph.num_edges(),
                elapsed());
    return 0;
}

int run_compress(const std::string& in, const std::string& pos, const std::string& out) {
    auto [graph, header] = girg::read_edge_list(in);
    girg::VertexOrder order;
    if (!pos.empty()) {
        const girg::PointSet pts = girg::read_positions(pos);
        if (pts.size() != graph.num_vertices())
            throw girg::UsageError("compress: positions do not match the edge list");
        order = girg::geometric_vertex_order(pts);
    } else {
        order = girg::identity_order(graph.num_vertices());
    }
    const girg::CompressedGraph cg(graph, order);
    cg.save(out);
    std::printf("n=%" PRIu64 " m=%" PRIu64 " bits=%" PRIu64 " bits_per_edge=%.3f\n",
                cg.num_vertices(), cg.num_edges(), cg.total_bits(),
                cg.num_edges() ? static_cast<double>(cg.total_bits()) /
                                     static_cast<double>(cg.num_edges())
                               : 0.0);
    return 0;
}

int run_query(const std::string& in) {
    const girg::CompressedGraph cg = girg::CompressedGraph::load(in);
    const std::uint64_t n = cg.num_vertices();
    std::vector<std::uint64_t> to_new(n + 1, 0); // original 1-based -> new 1-based
    for (std::uint64_t k = 0; k < n; ++k) to_new[cg.perm()[k]] = k + 1;

    char line[256];
    while (std::fgets(line, sizeof line, stdin)) {
        char cmd[16];
        std::uint64_t i = 0, s = 0;
        const int got = std::sscanf(line, "%15s %" SCNu64 " %" SCNu64, cmd, &i, &s);
        if (got <= 0) continue; // blank line
        if (std::strcmp(cmd, "degree") == 0 && got == 2) {
            if (i < 1 || i > n) throw girg::UsageError("query: vertex id out of range");
            std::printf("%" PRIu64 "\n", cg.degree(to_new[i]));
        } else if (std::strcmp(cmd, "neighbor") == 0 && got == 3) {
            if (i < 1 || i > n) throw girg::UsageError("query: vertex id out of range");
            const std::uint64_t j = cg.neighbor(to_new[i], s);
            std::printf("%" PRIu64 "\n", cg.perm()[j - 1]);
        } else {
            throw girg::UsageError("query: expected 'degree <i>' or 'neighbor <i> <s>'");
        }
    }
    return 0;
}

struct StatsArgs {
    std::string in;
    std::string pos;
    int grid_mu = 0;
    double eta = 0.1;
    std::uint64_t pairs = 1000;
    std::uint64_t kmin = 10;
    std::uint64_t seed = 0;
    bool json = false;
    bool sel_cc = false;
    bool sel_tail = false;
    bool sel_components = false;
    bool sel_distance = false;
};

int run_stats(const StatsArgs& a) {
    auto [graph, header] = girg::read_edge_list(a.in);

    // with no subset flags everything is reported; otherwise only what was asked
    const bool pick = a.sel_cc || a.sel_tail || a.sel_components || a.sel_distance ||
                      a.grid_mu != 0;
    girg::StatsOptions opt;
    opt.want_clustering = !pick || a.sel_cc;
    opt.want_tail = !pick || a.sel_tail;
    opt.want_components = !pick || a.sel_components;
    opt.distance_pairs = (!pick || a.sel_distance) ? a.pairs : 0;
    opt.tail_k_min = a.kmin;
    opt.seed = a.seed;
    const girg::StatsReport r = girg::compute_stats(graph, opt);

    bool have_cut = false;
    std::uint64_t cut = 0;
    double cut_bound = 0.0;
    if (a.grid_mu != 0) {
        if (a.pos.empty())
            throw girg::UsageError("stats: --grid-mu needs --pos");
        const girg::PointSet pts = girg::read_positions(a.pos);
        cut = girg::grid_cut_count(graph, pts, a.grid_mu);
        cut_bound = girg::grid_cut_bound(r.n, a.grid_mu, pts.dim(), header.alpha,
                                         header.beta, a.eta);
        have_cut = true;
    }

    if (a.json) {
        nlohmann::json j;
        j["schema"] = 1;
        j["n"] = r.n;
        j["m"] = r.m;
        j["min_degree"] = r.min_degree;
        j["max_degree"] = r.max_degree;
        j["mean_degree"] = r.mean_degree;
        if (opt.want_components) {
            j["components"] = r.components;
            j["giant_size"] = r.giant_size;
            j["giant_fraction"] = r.giant_fraction;
        }
        if (opt.want_clustering) j["clustering"] = r.clustering;
        if (r.beta_hat_valid) j["beta_hat"] = r.beta_hat;
        if (r.avg_distance_valid) j["avg_distance"] = r.avg_distance;
        if (have_cut) {
            j["grid_cut"] = cut;
            j["grid_cut_bound"] = cut_bound;
        }
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }

    std::printf("schema=1\n");
    std::printf("n=%" PRIu64 "\n", r.n);
    std::printf("m=%" PRIu64 "\n", r.m);
    std::printf("min_degree=%" PRIu64 "\n", r.min_degree);
    std::printf("max_degree=%" PRIu64 "\n", r.max_degree);
    std::printf("mean_degree=%.17g\n", r.mean_degree);
    if (opt.want_components) {
        std::printf("components=%" PRIu64 "\n", r.components);
        std::printf("giant_size=%" PRIu64 "\n", r.giant_size);
        std::printf("giant_fraction=%.17g\n", r.giant_fraction);
    }
    if (opt.want_clustering) std::printf("clustering=%.17g\n", r.clustering);
    if (r.beta_hat_valid) std::printf("beta_hat=%.17g\n", r.beta_hat);
    if (r.avg_distance_valid) std::printf("avg_distance=%.17g\n", r.avg_distance);
    if (have_cut) {
        std::printf("grid_cut=%" PRIu64 "\n", cut);
        std::printf("grid_cut_bound=%.17g\n", cut_bound);
    }
    return 0;
}

struct BenchArgs {
    std::string sweep = "2^10..2^14";
    int d = 1;
    std::string alpha = "2";
    double beta = 2.5;
    double delta = 1.0;
    std::uint64_t seed = 0;
    int reps = 1;
};

std::vector<std::uint64_t> parse_sweep(const std::string& s) {
    int lo = 0, hi = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "2^%d..2^%d%c", &lo, &hi, &extra) == 2) {
        // range form
    } else if (std::sscanf(s.c_str(), "2^%d%c", &lo, &extra) == 1) {
        hi = lo; // single point
    } else {
        throw girg::UsageError("bench: sweep must look like 2^a or 2^a..2^b");
    }
    if (lo < 0 || hi < lo || hi > 30)
        throw girg::UsageError("bench: sweep exponents must satisfy 0 <= a <= b <= 30");
    std::vector<std::uint64_t> ns;
    for (int e = lo; e <= hi; ++e) ns.push_back(1ull << e);
    return ns;
}

int run_bench(const BenchArgs& a) {
    girg::GirgParams params;
    params.d = a.d;
    params.alpha = parse_alpha(a.alpha);
    params.beta = a.beta;
    params.c_upper = params.p_scale;
    params.validate();
    const std::vector<std::uint64_t> ns = parse_sweep(a.sweep);
    const auto rows = girg::expected_runtime_probe(ns, params, a.delta, a.seed, a.reps);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::printf("n=%" PRIu64 " seconds=%.6f edges=%" PRIu64, rows[i].n,
                    rows[i].seconds, rows[i].edges);
        if (i > 0 && rows[i - 1].seconds > 0.0)
            std::printf(" ratio=%.3f", rows[i].seconds / rows[i - 1].seconds);
        std::printf("\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric random graph toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    GenerateArgs gen;
    CLI::App* g = app.add_subcommand("generate", "sample a graph and write it to files");
    g->add_option("--n", gen.n, "number of vertices")->required();
    auto* o_d = g->add_option("--d", gen.d, "torus dimension");
    auto* o_alpha = g->add_option("--alpha", gen.alpha, "distance falloff exponent, or 'inf'");
    auto* o_beta = g->add_option("--beta", gen.beta, "degree tail exponent");
    auto* o_delta =
        g->add_option("--delta", gen.delta, "weight scale (fixed) / minimum weight (sampled)");
    auto* o_weights = g->add_option("--weights", gen.weights, "'fixed' or 'sampled'");
    auto* o_pscale = g->add_option("--p-scale", gen.p_scale, "connection probability prefactor");
    auto* o_tau = g->add_option("--tau", gen.tau, "threshold radius multiplier (alpha=inf)");
    auto* o_hyp = g->add_flag("--hyperbolic", gen.hyperbolic, "sample the hyperbolic disk model");
    // one model family per run: the hyperbolic block shuts out the girg knobs
    for (auto* opt : {o_d, o_alpha, o_beta, o_delta, o_weights, o_pscale, o_tau})
        o_hyp->excludes(opt);
    g->add_option("--alpha-h", gen.alpha_h, "hyperbolic radial dispersion")->needs(o_hyp);
    g->add_option("--c-h", gen.c_h, "hyperbolic disk radius offset")->needs(o_hyp);
    g->add_option("--t-h", gen.t_h, "hyperbolic temperature")->needs(o_hyp);
    g->add_flag("--polar-out", gen.polar_out, "also write native polar coordinates")
        ->needs(o_hyp);
    g->add_option("--seed", gen.seed, "random seed (default 0)");
    g->add_option("--threads", gen.threads, "worker threads");
    g->add_option("--out", gen.out, "output prefix (writes <out>.edges, <out>.pos)")
        ->required();

    std::string c_in, c_pos, c_out;
    CLI::App* c = app.add_subcommand("compress", "encode an edge list compactly");
    c->add_option("--in", c_in, "edge list file")->required();
    c->add_option("--pos", c_pos, "positions file (enables locality-aware ids)");
    c->add_option("--out", c_out, "output file")->required();

    std::string q_in;
    CLI::App* q = app.add_subcommand("query", "answer degree/neighbor queries from stdin");
    q->add_option("--in", q_in, "compressed graph file")->required();

    StatsArgs st;
    CLI::App* s = app.add_subcommand("stats", "summarize an edge list");
    s->add_option("--in", st.in, "edge list file")->required();
    s->add_option("--pos", st.pos, "positions file (for --grid-mu)");
    s->add_option("--grid-mu", st.grid_mu, "grid cells per axis for cut counting");
    s->add_option("--eta", st.eta, "slack exponent in the cut bound");
    s->add_option("--pairs", st.pairs, "sampled vertex pairs for distance estimate");
    s->add_option("--kmin", st.kmin, "smallest degree used by the tail estimate");
    s->add_option("--seed", st.seed, "random seed for sampling (default 0)");
    s->add_flag("--json", st.json, "emit JSON instead of key=value lines");
    s->add_flag("--cc", st.sel_cc, "report the clustering coefficient");
    s->add_flag("--tail", st.sel_tail, "report the degree tail exponent");
    s->add_flag("--components", st.sel_components, "report component structure");
    s->add_flag("--distance", st.sel_distance, "report the sampled average distance");

    BenchArgs be;
    CLI::App* b = app.add_subcommand("bench", "time the sampler over a size sweep");
    b->add_option("--sweep", be.sweep, "sizes, e.g. 2^10..2^16");
    b->add_option("--d", be.d, "torus dimension");
    b->add_option("--alpha", be.alpha, "distance falloff exponent, or 'inf'");
    b->add_option("--beta", be.beta, "degree tail exponent");
    b->add_option("--delta", be.delta, "weight scale");
    b->add_option("--seed", be.seed, "random seed (default 0)");
    b->add_option("--reps", be.reps, "repetitions per size (median reported)");

    try {
        app.parse(argc, argv);
        if (g->parsed()) return run_generate(gen);
        if (c->parsed()) return run_compress(c_in, c_pos, c_out);
        if (q->parsed()) return run_query(q_in);
        if (s->parsed()) return run_stats(st);
        if (b->parsed()) return run_bench(be);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message
        return kExitUsage;
    } catch (const girg::CorruptDataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCorrupt;
    } catch (const girg::ModelConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitModelConfig;
    } catch (const girg::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
