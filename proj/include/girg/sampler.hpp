#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "girg/errors.hpp"
#include "girg/geometry.hpp"
#include "girg/graph.hpp"
#include "girg/model.hpp"
#include "girg/rng.hpp"
#include "girg/spatial_index.hpp"

namespace girg {

// Doubling weight buckets: layer i (1-based) holds vertices with weight in
// [w0 * 2^(i-1), w0 * 2^i), where w0 is the smallest weight.
struct WeightLayers {
    double w0 = 1.0;
    int count = 0;
    std::vector<std::vector<std::uint32_t>> members; // members[i-1] = ids of layer i

    double upper_bound(int i) const { return w0 * std::ldexp(1.0, i); }
    int layer_of(double w) const {
        int i = static_cast<int>(std::floor(std::log2(w / w0))) + 1;
        return i < 1 ? 1 : i;
    }
};

WeightLayers build_weight_layers(const WeightSequence& ws);

// Geometric law on {1, 2, ...}: Pr[k] = p * (1-p)^(k-1).  Sampled by inverting
// the CDF; saturates at 2^64-1 for astronomically long jumps.
std::uint64_t geometric_variate(double p, Rng& rng);

struct SampleStats {
    std::uint64_t close_products = 0;     // cell pairs enumerated exhaustively
    std::uint64_t separated_products = 0; // cell pairs handled by skip sampling
    std::uint64_t pair_trials = 0;        // vertex pairs whose probability was evaluated
    std::uint64_t geo_draws = 0;
    std::uint64_t edges = 0;
    int envelope_doublings = 0;

    void merge(const SampleStats& o) {
        close_products += o.close_products;
        separated_products += o.separated_products;
        pair_trials += o.pair_trials;
        geo_draws += o.geo_draws;
        edges += o.edges;
    }
};

struct CoreOptions {
    double alpha = 2.0;    // may be infinity: separated cell pairs are skipped outright
    double c_upper = 1.0;  // envelope constant for skip sampling
    double nu_scale = 1.0; // partition coarsening factor (threshold rule only)
    int threads = 1;
};

struct NoopTrialObserver {
    void operator()(std::uint32_t, std::uint32_t) const {}
};

namespace detail {

inline double pow_alpha(double base, double alpha) {
    const int ia = static_cast<int>(alpha);
    if (alpha == ia && ia >= 1 && ia <= 8) {
        double p = base;
        for (int k = 1; k < ia; ++k) p *= base;
        return p;
    }
    return std::pow(base, alpha);
}

} // namespace detail

// Core edge-sampling engine.  Vertices are grouped into weight layers; each
// layer gets a point index sized so that layer-pair cell products hold O(1)
// points on average.  For every ordered layer pair the torus is partitioned
// into cell pairs: close pairs are sampled pair-by-pair with the exact
// probability `prob(u, v)`, separated pairs via geometric jumps under the
// envelope p = min{c_upper * (w_i w_j / (W dist^d))^alpha, 1}, accepting with
// prob/envelope.  With alpha = infinity separated pairs cannot host edges
// (given envelope constants that the model validated) and are skipped.
//
// Every unordered pair's edge indicator is decided at most once: within a
// same-layer product only u < v is eligible.  Randomness is drawn from
// substreams keyed by (layer i, layer j, partition pair rank), so results are
// independent of traversal order; with threads > 1 edges are buffered per
// layer pair and emitted in layer-pair order, making the emitted sequence
// identical to a sequential run.  The observer sees every probability trial
// (from worker threads, if threading is enabled).
template <class Prob, class Sink, class Obs>
SampleStats sample_edges_core(int d, const PointSet& pts, const WeightSequence& ws,
                              const CoreOptions& opt, std::uint64_t seed,
                              Prob&& prob, Sink&& sink, Obs&& obs) {
    if (ws.empty()) throw UsageError("sampler: need at least one vertex");
    if (pts.size() != ws.size() || pts.dim() != d)
        throw UsageError("sampler: positions do not match weights/dimension");
    if (opt.threads < 1) throw UsageError("sampler: thread count must be >= 1");
    if (!(opt.c_upper > 0.0)) throw UsageError("sampler: c_upper must be positive");
    const bool inf_alpha = std::isinf(opt.alpha);
    if (!inf_alpha && !(opt.alpha > 1.0)) throw UsageError("sampler: alpha must be > 1");

    const double W = ws.total();
    const WeightLayers layers = build_weight_layers(ws);
    const int L = layers.count;

    struct LayerData {
        PointIndex index;
        bool active = false;
    };
    std::vector<LayerData> lay(L);
    {
        std::vector<double> coords;
        for (int i = 1; i <= L; ++i) {
            const auto& ids = layers.members[i - 1];
            if (ids.empty()) continue;
            coords.clear();
            coords.reserve(ids.size() * d);
            for (std::uint32_t v : ids)
                for (int k = 0; k < d; ++k) coords.push_back(pts.flat()[static_cast<std::uint64_t>(v) * d + k]);
            double nu = layers.upper_bound(i) * layers.w0 / W;
            if (nu > 1.0) nu = 1.0;
            lay[i - 1].index = PointIndex(d, coords, ids, nu);
            lay[i - 1].active = true;
        }
    }

    std::vector<std::pair<int, int>> tasks;
    for (int i = 1; i <= L; ++i) {
        if (!lay[i - 1].active) continue;
        for (int j = i; j <= L; ++j)
            if (lay[j - 1].active) tasks.emplace_back(i, j);
    }

    const double* flat = pts.flat().data();
    (void)flat;

    auto run_task = [&](std::size_t ti, auto&& emit, SampleStats& ts) {
        const auto [i, j] = tasks[ti];
        const PointIndex& ia = lay[i - 1].index;
        const PointIndex& ib = lay[j - 1].index;
        const double layer_ratio = layers.upper_bound(i) * layers.upper_bound(j) / W;
        double nu = layer_ratio * (inf_alpha ? opt.nu_scale : 1.0);
        if (nu > 1.0) nu = 1.0;
        const bool same = i == j;

        for_each_partition_pair(
            nu, d,
            [&](int level, std::uint64_t ra, std::uint64_t rb, PairKind kind, double dist,
                std::uint64_t prank) {
                const auto rga = ia.range(level, ra);
                if (rga.count == 0) return;
                const auto rgb = ib.range(level, rb);
                if (rgb.count == 0) return;
                Rng rng(derive_seed(seed, {stream::edges, static_cast<std::uint64_t>(i),
                                           static_cast<std::uint64_t>(j), prank}));

                if (kind == PairKind::TypeI) {
                    ++ts.close_products;
                    for (std::uint32_t ka = 0; ka < rga.count; ++ka) {
                        const std::uint32_t u = ia.point_at(rga.begin + ka);
                        for (std::uint32_t kb = 0; kb < rgb.count; ++kb) {
                            const std::uint32_t v = ib.point_at(rgb.begin + kb);
                            if (same && u >= v) continue;
                            ++ts.pair_trials;
                            obs(u, v);
                            const double p = prob(u, v);
                            if (p > 0.0 && uniform01(rng) < p) {
                                emit(u, v);
                                ++ts.edges;
                            }
                        }
                    }
                    return;
                }

                ++ts.separated_products;
                double dist_d = dist;
                for (int k = 1; k < d; ++k) dist_d *= dist;
                double pbar = opt.c_upper * detail::pow_alpha(layer_ratio / dist_d, opt.alpha);
                if (pbar > 1.0) pbar = 1.0;
                // No truncation for tiny envelopes: the geometric jump saturates
                // and overshoots the product on its own.  Only an exact zero (a
                // fully underflowed envelope) means "never", so skip it outright.
                if (pbar == 0.0) return;
                const std::uint64_t total =
                    static_cast<std::uint64_t>(rga.count) * rgb.count;
                std::uint64_t r = 0;
                for (;;) {
                    const std::uint64_t g = geometric_variate(pbar, rng);
                    ++ts.geo_draws;
                    if (g > total - r) break;
                    r += g;
                    const std::uint64_t pos = r - 1;
                    const std::uint32_t u =
                        ia.point_at(rga.begin + static_cast<std::uint32_t>(pos / rgb.count));
                    const std::uint32_t v =
                        ib.point_at(rgb.begin + static_cast<std::uint32_t>(pos % rgb.count));
                    if (!(same && u >= v)) {
                        const double p = prob(u, v);
                        if (p > pbar * (1.0 + 1e-9))
                            throw BoundViolationError("pair probability exceeds skip envelope");
                        ++ts.pair_trials;
                        obs(u, v);
                        if (uniform01(rng) * pbar < p) {
                            emit(u, v);
                            ++ts.edges;
                        }
                    }
                    if (r == total) break;
                }
            },
            /*emit_type_ii=*/!inf_alpha);
    };

    SampleStats st;
    if (opt.threads <= 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t)
            run_task(t, [&](std::uint32_t u, std::uint32_t v) { sink(u, v); }, st);
        return st;
    }

    std::vector<std::vector<Edge>> bufs(tasks.size());
    std::vector<SampleStats> tstats(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    const int nw = static_cast<int>(std::min<std::size_t>(opt.threads, tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                try {
                    run_task(t, [&bufs, t](std::uint32_t u, std::uint32_t v) {
                        bufs[t].emplace_back(u, v);
                    }, tstats[t]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        st.merge(tstats[t]);
        for (const auto& [u, v] : bufs[t]) sink(u, v);
    }
    return st;
}

template <class Prob, class Sink>
SampleStats sample_edges_core(int d, const PointSet& pts, const WeightSequence& ws,
                              const CoreOptions& opt, std::uint64_t seed,
                              Prob&& prob, Sink&& sink) {
    NoopTrialObserver obs;
    return sample_edges_core(d, pts, ws, opt, seed, std::forward<Prob>(prob),
                             std::forward<Sink>(sink), obs);
}

struct GirgResult {
    PointSet positions;
    Graph graph;
    SampleStats stats;
};

// Uniform torus positions; one substream-consuming draw per coordinate.
PointSet sample_positions(std::uint64_t n, int d, Rng& rng);

// Full pipeline: positions from the seed's position substream, then edges.
GirgResult sample_girg(const GirgParams& params, const WeightSequence& ws,
                       std::uint64_t seed, int threads = 1);

// Edge phase only, on caller-supplied positions (same law as sample_girg when
// handed the positions it would have drawn itself).
Graph sample_girg_with_positions(const GirgParams& params, const WeightSequence& ws,
                                 const PointSet& pts, std::uint64_t seed, int threads = 1,
                                 SampleStats* stats_out = nullptr);

// Quadratic reference sampler: one Bernoulli trial per vertex pair.
Graph sample_girg_naive(const GirgParams& params, const WeightSequence& ws,
                        const PointSet& pts, Rng& rng);

struct RuntimeProbeRow {
    std::uint64_t n = 0;
    double seconds = 0.0;
    std::uint64_t edges = 0;
};

// Times end-to-end sampling (positions + edges, edges only counted) at each n,
// with deterministic fixed weights.  `reps` > 1 reports the median time.
std::vector<RuntimeProbeRow> expected_runtime_probe(std::span<const std::uint64_t> n_values,
                                                    const GirgParams& params, double delta,
                                                    std::uint64_t seed, int reps = 1);

} // namespace girg
