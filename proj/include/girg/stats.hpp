#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "girg/geometry.hpp"
#include "girg/graph.hpp"
#include "girg/rng.hpp"

namespace girg {

// Fraction of connected neighbor pairs of v; 0 when deg(v) < 2.  Checks each
// neighbor pair directly, independently of the batch routine below.
double local_clustering(const Graph& g, std::uint32_t v);

// Local coefficients for all vertices at once, via triangle counting over
// degree-ordered forward adjacency (each triangle found exactly once).
std::vector<double> local_clustering_all(const Graph& g);

// Mean local coefficient over all vertices (isolated and degree-1 count as 0).
double global_clustering(const Graph& g);

// Maximum-likelihood tail exponent of the degree sequence, using degrees
// >= k_min: 1 + tail_size / sum ln(deg / (k_min - 0.5)).  Throws
// InsufficientDataError when fewer than 50 degrees qualify or they are all
// equal (no spread to fit).
double tail_exponent_estimate(std::span<const std::uint64_t> degrees,
                              std::uint64_t k_min);
double tail_exponent_estimate(const Graph& g, std::uint64_t k_min);

struct ComponentsResult {
    std::uint64_t count = 0;
    std::uint64_t giant_size = 0;
    std::uint32_t giant_label = 0;
    std::vector<std::uint32_t> label;  // component id per vertex
    std::vector<std::uint64_t> sizes;  // all component sizes, largest first
};

ComponentsResult connected_components(const Graph& g);

// Mean shortest-path distance inside the largest component, estimated from
// `pairs` random vertex pairs (targets drawn in small batches per BFS
// source).  Small components are measured exactly instead when the pair
// budget would cover every pair anyway.  Throws InsufficientDataError when
// the largest component has fewer than two vertices.
double average_distance_sample(const Graph& g, std::uint64_t pairs, std::uint64_t seed);

// Number of edges whose endpoints fall into different cells of the regular
// mu x ... x mu grid (mu a power of two, mu^d <= n).
std::uint64_t grid_cut_count(const Graph& g, const PointSet& pts, int mu);

// Analytic cut-size scale for the same grid: with q = n / mu^d, it is
// n q^(2-beta+eta) + (n^(2-alpha) mu^(d(alpha-1)) + n^(1-1/d) mu)(1 + ln q);
// the middle addend vanishes for the threshold model (alpha = inf).
double grid_cut_bound(std::uint64_t n, int mu, int d, double alpha, double beta,
                      double eta);

// Degree-preserving randomization: `attempts` double-edge swaps, each applied
// only if it creates neither a self-loop nor a parallel edge.  Returns the
// rewired graph; degrees match g vertex by vertex.
Graph degree_preserving_shuffle(const Graph& g, std::uint64_t attempts, Rng& rng);

// hist[k] = number of vertices with degree k.
std::vector<std::uint64_t> degree_histogram(const Graph& g);

struct StatsOptions {
    std::uint64_t distance_pairs = 1000; // 0 disables distance sampling
    std::uint64_t tail_k_min = 10;
    std::uint64_t seed = 0;
    bool want_clustering = true;
    bool want_tail = true;
    bool want_components = true;
};

struct StatsReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t min_degree = 0;
    std::uint64_t max_degree = 0;
    double mean_degree = 0.0;
    std::uint64_t components = 0;
    std::uint64_t giant_size = 0;
    double giant_fraction = 0.0;
    double clustering = 0.0;
    bool beta_hat_valid = false;
    double beta_hat = 0.0;
    bool avg_distance_valid = false;
    double avg_distance = 0.0;
};

StatsReport compute_stats(const Graph& g, const StatsOptions& opt);

} // namespace girg
