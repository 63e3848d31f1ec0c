#include "girg/sampler.hpp"

#include <chrono>
#include <limits>

namespace girg {

WeightLayers build_weight_layers(const WeightSequence& ws) {
    if (ws.empty()) throw UsageError("weight layers: empty weight sequence");
    WeightLayers out;
    out.w0 = ws.min_weight();
    out.count = out.layer_of(ws.max_weight());
    out.members.resize(out.count);
    for (std::uint32_t v = 0; v < ws.size(); ++v)
        out.members[out.layer_of(ws[v]) - 1].push_back(v);
    return out;
}

std::uint64_t geometric_variate(double p, Rng& rng) {
    if (!(p > 0.0) || !(p <= 1.0)) throw UsageError("geometric variate: p must be in (0, 1]");
    if (p == 1.0) return 1;
    const double u = uniform01_pos(rng);
    const double g = std::ceil(std::log(u) / std::log1p(-p));
    if (g >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
    const auto k = static_cast<std::uint64_t>(g);
    return k < 1 ? 1 : k;
}

PointSet sample_positions(std::uint64_t n, int d, Rng& rng) {
    return PointSet::uniform(n, d, rng);
}

namespace {

CoreOptions core_options_for(const GirgParams& params, int threads) {
    CoreOptions opt;
    opt.alpha = params.alpha;
    opt.c_upper = params.c_upper;
    opt.nu_scale = params.alpha_infinite()
                       ? std::pow(std::max(1.0, params.tau_threshold), params.d)
                       : 1.0;
    opt.threads = threads;
    return opt;
}

} // namespace

Graph sample_girg_with_positions(const GirgParams& params, const WeightSequence& ws,
                                 const PointSet& pts, std::uint64_t seed, int threads,
                                 SampleStats* stats_out) {
    params.validate();
    if (ws.size() > std::numeric_limits<std::uint32_t>::max())
        throw UsageError("sampler: too many vertices");
    const double W = ws.total();
    std::vector<Edge> edges;
    auto prob = [&](std::uint32_t u, std::uint32_t v) {
        return edge_probability(ws[u], ws[v], pts[u], pts[v], W, params);
    };
    const SampleStats st = sample_edges_core(
        params.d, pts, ws, core_options_for(params, threads), seed, prob,
        [&](std::uint32_t u, std::uint32_t v) { edges.emplace_back(u, v); });
    if (stats_out) *stats_out = st;
    return Graph(ws.size(), std::move(edges), /*validate=*/false);
}

GirgResult sample_girg(const GirgParams& params, const WeightSequence& ws,
                       std::uint64_t seed, int threads) {
    params.validate();
    Rng pos_rng(derive_seed(seed, {stream::positions}));
    PointSet pts = sample_positions(ws.size(), params.d, pos_rng);
    SampleStats st;
    Graph g = sample_girg_with_positions(params, ws, pts, seed, threads, &st);
    return GirgResult{std::move(pts), std::move(g), st};
}

Graph sample_girg_naive(const GirgParams& params, const WeightSequence& ws,
                        const PointSet& pts, Rng& rng) {
    params.validate();
    const std::uint64_t n = ws.size();
    if (pts.size() != n || pts.dim() != params.d)
        throw UsageError("sampler: positions do not match weights/dimension");
    const double W = ws.total();
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u + 1 < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            const double p = edge_probability(ws[u], ws[v], pts[u], pts[v], W, params);
            if (uniform01(rng) < p) edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges), /*validate=*/false);
}

std::vector<RuntimeProbeRow> expected_runtime_probe(std::span<const std::uint64_t> n_values,
                                                    const GirgParams& params, double delta,
                                                    std::uint64_t seed, int reps) {
    params.validate();
    if (reps < 1) throw UsageError("runtime probe: reps must be >= 1");
    std::vector<RuntimeProbeRow> rows;
    rows.reserve(n_values.size());
    for (const std::uint64_t n : n_values) {
        WeightSequence ws = make_weights_fixed(n, params.beta, delta);
        const double W = ws.total();
        std::vector<double> times(reps);
        std::uint64_t edge_count = 0;
        for (int r = 0; r < reps; ++r) {
            edge_count = 0;
            const auto t0 = std::chrono::steady_clock::now();
            Rng pos_rng(derive_seed(seed, {stream::positions}));
            const PointSet pts = sample_positions(n, params.d, pos_rng);
            auto prob = [&](std::uint32_t u, std::uint32_t v) {
                return edge_probability(ws[u], ws[v], pts[u], pts[v], W, params);
            };
            sample_edges_core(params.d, pts, ws, core_options_for(params, 1), seed, prob,
                              [&](std::uint32_t, std::uint32_t) { ++edge_count; });
            const auto t1 = std::chrono::steady_clock::now();
            times[r] = std::chrono::duration<double>(t1 - t0).count();
        }
        std::sort(times.begin(), times.end());
        rows.push_back(RuntimeProbeRow{n, times[reps / 2], edge_count});
    }
    return rows;
}

} // namespace girg
