#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "girg/errors.hpp"
#include "girg/model.hpp"
#include "girg/rng.hpp"
#include "girg/sampler.hpp"
#include "girg/stats.hpp"

using namespace girg;

namespace {

Graph random_graph(std::uint32_t n, double q, Rng& rng) {
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (uniform01(rng) < q) edges.emplace_back(u, v);
    return Graph(n, edges);
}

} // namespace

TEST_CASE("clustering coefficients match hand-computed graphs") {
    // complete graph on four vertices minus one edge
    const Graph nearly(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(local_clustering(nearly, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(local_clustering(nearly, 2) == doctest::Approx(1.0));
    CHECK(global_clustering(nearly) == doctest::Approx(5.0 / 6.0));

    // a triangle plus an isolated vertex: the isolate contributes a zero
    const Graph tri(4, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(global_clustering(tri) == doctest::Approx(0.75));

    const Graph path(3, {{0, 1}, {1, 2}});
    CHECK(local_clustering(path, 1) == 0.0);
    CHECK(global_clustering(path) == 0.0);

    CHECK_THROWS_AS(local_clustering(path, 3), UsageError);
    CHECK_THROWS_AS(global_clustering(Graph(0, {})), UsageError);
}

TEST_CASE("batch clustering equals the per-vertex routine") {
    Rng rng(81);
    for (int it = 0; it < 40; ++it) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform_below(rng, 30));
        const Graph g = random_graph(n, it % 2 == 0 ? 0.15 : 0.5, rng);
        const auto all = local_clustering_all(g);
        REQUIRE(all.size() == n);
        for (std::uint32_t v = 0; v < n; ++v)
            CHECK(all[v] == doctest::Approx(local_clustering(g, v)).epsilon(1e-12));
    }
}

TEST_CASE("tail estimator recovers a known exponent") {
    // start the law at 9.5 so that rounding fills the k = 10 bin completely,
    // matching the half-integer shift the estimator corrects with
    const double beta = 2.5, w_min = 9.5;
    Rng rng(82);
    std::vector<std::uint64_t> degrees(1'000'000);
    for (auto& deg : degrees) {
        const double x = pareto_quantile(uniform01(rng), beta, w_min);
        deg = static_cast<std::uint64_t>(std::llround(x));
    }
    const double est = tail_exponent_estimate(degrees, 10);
    CHECK(est > 2.45);
    CHECK(est < 2.55);

    // restricting to a higher cutoff keeps the same tail
    const double est_high = tail_exponent_estimate(degrees, 40);
    CHECK(est_high > 2.4);
    CHECK(est_high < 2.6);
}

TEST_CASE("tail estimator refuses degenerate input") {
    std::vector<std::uint64_t> few(49, 20);
    CHECK_THROWS_AS(tail_exponent_estimate(few, 10), InsufficientDataError);

    std::vector<std::uint64_t> flat(200, 7);
    CHECK_THROWS_AS(tail_exponent_estimate(flat, 5), InsufficientDataError);

    std::vector<std::uint64_t> ok(200, 7);
    for (std::size_t i = 0; i < 100; ++i) ok[i] = 9;
    CHECK_NOTHROW(tail_exponent_estimate(ok, 5));
    CHECK_THROWS_AS(tail_exponent_estimate(ok, 0), UsageError);

    // a 2-regular ring offers no spread to fit
    std::vector<Edge> ring;
    for (std::uint32_t v = 0; v < 100; ++v) ring.emplace_back(v, (v + 1) % 100);
    CHECK_THROWS_AS(tail_exponent_estimate(Graph(100, ring), 1), InsufficientDataError);
}

TEST_CASE("connected components label and size correctly") {
    const Graph g(7, {{0, 1}, {1, 2}, {3, 4}});
    const auto res = connected_components(g);
    CHECK(res.count == 4);
    CHECK(res.giant_size == 3);
    CHECK(res.label == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2, 3});
    CHECK(res.giant_label == 0);
    CHECK(res.sizes == std::vector<std::uint64_t>{3, 2, 1, 1});

    const auto empty = connected_components(Graph(0, {}));
    CHECK(empty.count == 0);
    CHECK(empty.giant_size == 0);

    const auto isolated = connected_components(Graph(3, {}));
    CHECK(isolated.count == 3);
    CHECK(isolated.giant_size == 1);

    // labels must agree with reachability on random graphs
    Rng rng(83);
    for (int it = 0; it < 20; ++it) {
        const Graph h = random_graph(50, 0.04, rng);
        const auto comp = connected_components(h);
        std::uint64_t total = 0;
        for (const auto s : comp.sizes) total += s;
        CHECK(total == 50);
        CHECK(std::is_sorted(comp.sizes.begin(), comp.sizes.end(), std::greater<>()));
        for (const auto& [u, v] : h.edges()) CHECK(comp.label[u] == comp.label[v]);
    }
}

TEST_CASE("generated graphs grow a dominant component") {
    GirgParams params;
    params.d = 1;
    params.alpha = 2.0;
    params.beta = 2.5;
    const auto ws = make_weights_fixed(100'000, 2.5, 1.5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto res = sample_girg(params, ws, seed);
        const auto comp = connected_components(res.graph);
        CHECK(comp.giant_size >= 30'000);
    }
}

TEST_CASE("average distance is exact on small graphs") {
    std::vector<Edge> complete;
    for (std::uint32_t u = 0; u < 5; ++u)
        for (std::uint32_t v = u + 1; v < 5; ++v) complete.emplace_back(u, v);
    CHECK(average_distance_sample(Graph(5, complete), 100, 0) == doctest::Approx(1.0));

    const Graph path(3, {{0, 1}, {1, 2}});
    CHECK(average_distance_sample(path, 100, 0) == doctest::Approx(4.0 / 3.0));

    // star: 4 pairs at distance 1, 6 leaf pairs at distance 2
    const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(average_distance_sample(star, 100, 0) == doctest::Approx(1.6));

    CHECK_THROWS_AS(average_distance_sample(path, 0, 0), UsageError);
    CHECK_THROWS_AS(average_distance_sample(Graph(3, {}), 10, 0), InsufficientDataError);
}

TEST_CASE("sampled distances track the exact mean of a ring") {
    std::vector<Edge> ring;
    for (std::uint32_t v = 0; v < 100; ++v) ring.emplace_back(v, (v + 1) % 100);
    const Graph g(100, ring);
    // mean over pairs of min(k, 100 - k): (2 * sum_{k<50} k + 50) / 99
    const double exact = 2500.0 / 99.0;
    const double est = average_distance_sample(g, 2000, 5);
    CHECK(std::abs(est - exact) < 1.5);
    CHECK(average_distance_sample(g, 2000, 5) == est); // same seed, same answer
    CHECK(average_distance_sample(g, 2000, 6) != est);
}

TEST_CASE("grid cut counts edges leaving their cell") {
    const PointSet pts(1, std::vector<double>{0.2, 0.7});
    const Graph g(2, {{0, 1}});
    CHECK(grid_cut_count(g, pts, 2) == 1);
    CHECK(grid_cut_count(g, pts, 1) == 0);
    CHECK_THROWS_AS(grid_cut_count(g, pts, 3), UsageError);
    CHECK_THROWS_AS(grid_cut_count(g, pts, 4), UsageError); // more cells than vertices
    CHECK_THROWS_AS(grid_cut_count(g, PointSet(1, std::vector<double>{0.2}), 2), UsageError);
}

TEST_CASE("grid cut matches an axis-index oracle and refines monotonically") {
    Rng rng(84);
    const std::uint32_t n = 300;
    const Graph g = random_graph(n, 0.02, rng);
    const PointSet pts = PointSet::uniform(n, 2, rng);

    for (const int mu : {2, 4, 8}) {
        std::uint64_t expect = 0;
        for (const auto& [u, v] : g.edges()) {
            bool differs = false;
            for (int k = 0; k < 2; ++k) {
                const auto cu = std::min<int>(mu - 1, static_cast<int>(pts[u][k] * mu));
                const auto cv = std::min<int>(mu - 1, static_cast<int>(pts[v][k] * mu));
                if (cu != cv) differs = true;
            }
            if (differs) ++expect;
        }
        CHECK(grid_cut_count(g, pts, mu) == expect);
    }

    std::uint64_t prev = 0;
    for (const int mu : {1, 2, 4, 8}) {
        const std::uint64_t cut = grid_cut_count(g, pts, mu);
        CHECK(cut >= prev); // finer grids only split cells further
        prev = cut;
    }
    CHECK(grid_cut_count(g, pts, 1) == 0);
}

TEST_CASE("cut-size scale follows its closed form") {
    const std::uint64_t n = 10'000;
    const int mu = 4, d = 2;
    const double alpha = 2.5, beta = 2.5, eta = 0.1;
    const double q = static_cast<double>(n) / 16.0;
    const double want = n * std::pow(q, 2.0 - beta + eta) +
                        (std::pow(n, 2.0 - alpha) * std::pow(mu, d * (alpha - 1.0)) +
                         std::pow(n, 0.5) * mu) *
                            (1.0 + std::log(q));
    CHECK(grid_cut_bound(n, mu, d, alpha, beta, eta) == doctest::Approx(want).epsilon(1e-12));

    // threshold model: the finite-alpha addend disappears entirely
    const double inf = std::numeric_limits<double>::infinity();
    const double cold = n * std::pow(q, 2.0 - beta + eta) +
                        std::pow(n, 0.5) * mu * (1.0 + std::log(q));
    CHECK(grid_cut_bound(n, mu, d, inf, beta, eta) == doctest::Approx(cold).epsilon(1e-12));

    CHECK_THROWS_AS(grid_cut_bound(n, 3, d, alpha, beta, eta), UsageError);
    CHECK_THROWS_AS(grid_cut_bound(4, 4, 2, alpha, beta, eta), UsageError);
    CHECK_THROWS_AS(grid_cut_bound(n, 4, 0, alpha, beta, eta), UsageError);
}

TEST_CASE("degree-preserving shuffle keeps degrees and simplicity") {
    Rng rng(85);
    const Graph g = random_graph(200, 0.05, rng);
    Rng shuffle_rng(86);
    const Graph h = degree_preserving_shuffle(g, 10 * g.num_edges(), shuffle_rng);

    REQUIRE(h.num_vertices() == g.num_vertices());
    CHECK(h.num_edges() == g.num_edges());
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) CHECK(h.degree(v) == g.degree(v));

    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [u, v] : h.edges()) {
        if (u > v) std::swap(u, v);
        CHECK(u != v);
        CHECK(seen.insert({u, v}).second); // no parallel edges
    }
    CHECK(h.edges() != g.edges()); // enough attempts to actually move something

    // tiny graphs pass through unchanged
    const Graph one(3, {{0, 1}});
    Rng r2(87);
    CHECK(degree_preserving_shuffle(one, 100, r2).num_edges() == 1);
}

TEST_CASE("degree histogram satisfies the counting identities") {
    Rng rng(88);
    const Graph g = random_graph(120, 0.07, rng);
    const auto hist = degree_histogram(g);
    std::uint64_t vertices = 0, stubs = 0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        vertices += hist[k];
        stubs += k * hist[k];
    }
    CHECK(vertices == g.num_vertices());
    CHECK(stubs == 2 * g.num_edges());
    CHECK(hist.back() > 0); // trimmed to the maximum degree
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        REQUIRE(g.degree(v) < hist.size());
    }
}

TEST_CASE("the report aggregates the individual measures") {
    // near-clique with a pendant isolate
    const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    StatsOptions opt;
    opt.distance_pairs = 100;
    const auto r = compute_stats(g, opt);
    CHECK(r.n == 5);
    CHECK(r.m == 5);
    CHECK(r.min_degree == 0);
    CHECK(r.max_degree == 3);
    CHECK(r.mean_degree == doctest::Approx(2.0));
    CHECK(r.components == 2);
    CHECK(r.giant_size == 4);
    CHECK(r.giant_fraction == doctest::Approx(0.8));
    CHECK(r.clustering == doctest::Approx(2.0 / 3.0));
    CHECK(!r.beta_hat_valid); // far too few degrees for a tail fit
    CHECK(r.avg_distance_valid);
    CHECK(r.avg_distance == doctest::Approx(7.0 / 6.0));

    StatsOptions off;
    off.want_clustering = false;
    off.want_components = false;
    off.want_tail = false;
    off.distance_pairs = 0;
    const auto bare = compute_stats(g, off);
    CHECK(bare.components == 0);
    CHECK(bare.clustering == 0.0);
    CHECK(!bare.beta_hat_valid);
    CHECK(!bare.avg_distance_valid);
    CHECK(bare.mean_degree == doctest::Approx(2.0));

    const auto lonely = compute_stats(Graph(4, {}), off);
    CHECK(lonely.max_degree == 0);
    CHECK_THROWS_AS(compute_stats(Graph(0, {}), opt), UsageError);
}
