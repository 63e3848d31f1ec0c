#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "girg/geometry.hpp"
#include "girg/graph.hpp"
#include "girg/hyperbolic.hpp"

namespace girg {

// First line of an edge-list file:
//   # girg n=<n> d=<d> alpha=<alpha|inf> beta=<beta> seed=<seed>
// followed by one "u v" line per edge, ids 1-based, u < v, sorted.
struct EdgeListHeader {
    std::uint64_t n = 0;
    int d = 1;
    double alpha = 2.0;
    double beta = 2.5;
    std::uint64_t seed = 0;
};

void write_edge_list(const std::string& path, const Graph& g, const EdgeListHeader& h);
std::pair<Graph, EdgeListHeader> read_edge_list(const std::string& path);

// One vertex per line, d coordinates, full double precision.
void write_positions(const std::string& path, const PointSet& pts);
PointSet read_positions(const std::string& path); // d inferred from the first line

void write_weights(const std::string& path, std::span<const double> w);
std::vector<double> read_weights(const std::string& path);

// One "r phi" line per vertex.
void write_polar(const std::string& path, std::span<const PolarPoint> pts);
std::vector<PolarPoint> read_polar(const std::string& path);

} // namespace girg
